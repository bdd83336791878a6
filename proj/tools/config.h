#pragma once

// Run configuration: a flat `key = value` text file. Blank lines and text
// after '#' are ignored; unknown keys are errors. Every key is optional and
// falls back to the defaults below (physical parameters, identification
// bounds and true friction of the reference simulation study).
//
// Angles in the config are in degrees; CSV files are in radians.
//
//   physical    m1 m2 j1z j2x j2y j2z l1 l2 L1 L2 g phi_deg
//   truth       mu_d0 mu_s0 mu_v0 theta_dot_t0 F_nt0 (and ...1 for joint 1)
//   bounds      z_l.<p> z_u.<p> lambda_l.<p> lambda_u.<p>   (<p> as above)
//   adaptation  gamma threshold averaging motion_speed_floor k0
//   nussbaum    nussbaum (mittag_leffler|n2|n3|n4) nussbaum_lambda
//               nussbaum_alpha series_tol max_terms
//   simulation  dt duration noise_enabled noise_sigma noise_units (rad|deg)
//               ic_noise_sigma ic_theta0_deg ic_theta1_deg ic_omega0_deg
//               ic_omega1_deg
//   optimizer   opt_max_evals opt_simplex_scale opt_tolerance
//   misc        seed coriolis (lagrangian|as_printed)

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "furuta/baseline.h"
#include "furuta/model.h"
#include "furuta/sim.h"
#include "furuta/uas.h"

namespace furuta {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter names in z1..z10 order.
inline constexpr std::array<std::string_view, kNumParams> kParamNames = {
    "mu_d0", "mu_s0", "mu_v0", "theta_dot_t0", "F_nt0",
    "mu_d1", "mu_s1", "mu_v1", "theta_dot_t1", "F_nt1"};

struct RunConfig {
  PhysicalParams physical;
  FrictionParams truth0;
  FrictionParams truth1;
  AdaptationConfig adaptation = AdaptationConfig::TableDefaults();
  NussbaumSpec nussbaum;
  SimConfig sim;
  OptConfig opt;
  CoriolisForm coriolis = CoriolisForm::kLagrangian;

  State initial_condition;      // radians
  double ic_noise_sigma = 0.1;  // observer initial-condition noise
  bool noise_in_degrees = false;
  double k0 = 0.01;
  std::uint64_t seed = 1;

  RunConfig();
  void Validate() const;

  PlantModel TruthPlant() const;
  ObserverModel Observer() const;
  // Noise levels in state units (radians) after applying noise_units.
  double MeasurementSigma() const;
  double InitialConditionSigma() const;

  // Derived seeds, so each random stream is independent.
  std::uint64_t MeasurementSeed() const { return seed; }
  std::uint64_t InitialConditionSeed() const { return seed + 1; }
  std::uint64_t InitialGuessSeed() const { return seed + 2; }
};

RunConfig ParseConfig(std::istream& in, const std::string& source = "<config>");
RunConfig LoadConfig(const std::string& path);

}  // namespace furuta
