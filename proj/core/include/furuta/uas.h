#pragma once

// High-gain universal adaptive observer for the friction parameters.
//
// The observer runs a copy of the plant model driven by the estimated
// friction and by the input u = H(q_hat) N(k) e, where e is the velocity
// error against the measurements, k' = ||e||^2 and N is a Nussbaum function.
// Each parameter estimate follows
//
//   z_n' = (gamma + lu_n (zu_n - z_n) + ll_n (zl_n - z_n)) ||e||
//
// which settles at (gamma + lu zu + ll zl) / (lu + ll) as long as ||e|| > 0.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "furuta/model.h"
#include "furuta/report.h"
#include "furuta/sim.h"

namespace furuta {

class SeriesNonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NussbaumKind { kMittagLeffler, kN2, kN3, kN4 };

struct NussbaumSpec {
  NussbaumKind kind = NussbaumKind::kMittagLeffler;
  double lambda = 1.0;
  double alpha = 3.0;  // Mittag-Leffler is a Nussbaum function for alpha in (2, 3]
  double series_tol = 1e-15;
  int max_terms = 400;

  void Validate() const;
};

// E_{alpha,1}(z) = sum_n z^n / Gamma(alpha n + 1), summed with log-Gamma
// weights until |term| < tol |sum| on the decreasing tail. Arguments with
// |z| > kMittagLefflerMaxArg are rejected: cancellation in the alternating
// series makes the result meaningless there.
inline constexpr double kMittagLefflerMaxArg = 700.0;
double MittagLeffler(double z, double alpha, double series_tol = 1e-15,
                     int max_terms = 400);

// N(k). Mittag-Leffler: E_alpha(-lambda k^alpha). N2..N4 are evaluated at k:
//   N2(k) = k cos(sqrt|k|), N3(k) = k^2 cos|k|, N4(k) = cos(pi k / 2) exp(k^2).
double Nussbaum(const NussbaumSpec& spec, double k);

struct ParameterBounds {
  double lower = 0.0;         // z_nl
  double upper = 0.0;         // z_nu
  double lambda_lower = 1.0;  // confidence in z_nl [1/s]
  double lambda_upper = 1.0;  // confidence in z_nu [1/s]
};

struct AdaptationConfig {
  std::array<ParameterBounds, kNumParams> bounds{};
  double gamma = 0.0;
  // Estimates are extracted at the first sample with ||e|| below this.
  double threshold = 0.01;
  // Average the estimates from the crossing to the end of motion.
  bool averaging = false;
  // End of motion = last sample with |measured q_dot| >= this. Zero means the
  // end of the record.
  double motion_speed_floor = 0.0;

  void Validate() const;

  ParamVector Lower() const;
  ParamVector Upper() const;
  ParamVector Midpoint() const { return 0.5 * (Lower() + Upper()); }
  // Constant-error equilibrium of the adaptation law.
  ParamVector SteadyState() const;

  // Bounds and confidences of the reference identification setup.
  static AdaptationConfig TableDefaults();
};

// z1..z5 -> joint 0, z6..z10 -> joint 1.
FrictionParams FrictionFromEstimates(const ParamVector& z, int joint);
ParamVector EstimatesFromFriction(const FrictionParams& joint0,
                                  const FrictionParams& joint1);

// Friction law of the observer, parameterized by the estimates.
double EstimatedFrictionTorque(const ParamVector& z, int joint, double omega,
                               double normal_force);

// Everything the observer knows about the plant.
struct ObserverModel {
  PhysicalParams physical;
  NormalForceProvider normal_force = StaticWeightNormalForce;
  CoriolisForm coriolis = CoriolisForm::kLagrangian;
};

inline constexpr int kObserverDim = 5 + kNumParams;
using ObserverVector = Eigen::Matrix<double, kObserverDim, 1>;

struct ObserverState {
  Vec2 q_hat = Vec2::Zero();
  Vec2 q_hat_dot = Vec2::Zero();
  double k = 0.0;
  ParamVector z_hat = ParamVector::Zero();

  State AsState() const { return State::FromParts(q_hat, q_hat_dot); }
  ObserverVector ToVector() const;
  static ObserverState FromVector(const ObserverVector& v);
};

// e = q_dot(measured) - q_hat_dot.
inline Vec2 VelocityError(const ObserverState& obs, const State& measured) {
  return measured.q_dot() - obs.q_hat_dot;
}

GeneralizedForces UasInput(const PhysicalParams& p, const ObserverState& obs,
                           const Vec2& e, const NussbaumSpec& spec);

ParamVector AdaptRhs(const AdaptationConfig& cfg, const ParamVector& z_hat,
                     double e_norm);

// Time derivative of the full observer state.
ObserverState ObserverRhs(const ObserverModel& model, const ObserverState& obs,
                          const State& measured, const AdaptationConfig& cfg,
                          const NussbaumSpec& spec);

// Gaussian around the bound midpoint with sd (upper - lower) / 6, clamped.
ParamVector InitialGuessSample(const AdaptationConfig& cfg, std::uint64_t seed);

// Co-integrates the observer against a uniformly sampled measured trajectory
// (zero-order hold between samples) and extracts the estimates. A run that
// never crosses the threshold reports converged = false, min_error_norm and
// the estimates at the sample of minimum error.
IdentificationReport Identify(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& cfg,
                              const NussbaumSpec& spec,
                              const ObserverState& init);

}  // namespace furuta
