#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace furuta {

inline constexpr int kNumParams = 10;

// Friction parameters stacked as z1..z10:
// (mu_d0, mu_s0, mu_v0, theta_dot_t0, F_nt0, mu_d1, mu_s1, mu_v1,
//  theta_dot_t1, F_nt1).
using ParamVector = Eigen::Matrix<double, kNumParams, 1>;

struct ParameterTracePoint {
  double t = 0.0;
  ParamVector z = ParamVector::Zero();
  double k = 0.0;
  double e_norm = 0.0;
};

struct ObjectiveTracePoint {
  std::size_t eval = 0;
  double objective = 0.0;
  double best = 0.0;
};

// Result of either identification route.
struct IdentificationReport {
  std::string method;
  ParamVector estimates = ParamVector::Zero();
  ParamVector initial_guess = ParamVector::Zero();

  // Observer route: first time ||e|| fell below the threshold.
  bool converged = false;
  double crossing_time = std::numeric_limits<double>::quiet_NaN();
  double min_error_norm = std::numeric_limits<double>::infinity();
  // Set when a numerical failure stopped the run early.
  bool aborted = false;
  std::string note;

  // Optimization route.
  std::size_t evaluations = 0;
  double best_objective = std::numeric_limits<double>::quiet_NaN();
  bool budget_exhausted = false;

  double wall_time_s = 0.0;

  std::vector<ParameterTracePoint> parameter_trace;
  std::vector<ObjectiveTracePoint> objective_trace;
};

}  // namespace furuta
