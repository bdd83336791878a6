#include "furuta/uas.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace furuta {

void NussbaumSpec::Validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("nussbaum lambda must be > 0");
  if (kind == NussbaumKind::kMittagLeffler && !(alpha > 2.0 && alpha <= 3.0)) {
    throw std::invalid_argument("Mittag-Leffler Nussbaum needs alpha in (2, 3]");
  }
  if (!(series_tol > 0.0)) throw std::invalid_argument("series_tol must be > 0");
  if (max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
}

double MittagLeffler(double z, double alpha, double series_tol, int max_terms) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (z == 0.0) return 1.0;
  if (!(std::abs(z) <= kMittagLefflerMaxArg)) {
    std::ostringstream msg;
    msg << "Mittag-Leffler series unreliable for |z| = " << std::abs(z)
        << " > " << kMittagLefflerMaxArg;
    throw SeriesNonConvergenceError(msg.str());
  }
  const double log_abs_z = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  double sum = 0.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int n = 0; n < max_terms; ++n) {
    const double magnitude =
        std::exp(n * log_abs_z - std::lgamma(alpha * n + 1.0));
    sum += (alternating && (n % 2 == 1)) ? -magnitude : magnitude;
    if (magnitude < prev_abs && magnitude <= series_tol * std::abs(sum)) {
      return sum;
    }
    prev_abs = magnitude;
  }
  std::ostringstream msg;
  msg << "Mittag-Leffler series did not converge in " << max_terms
      << " terms (z = " << z << ", alpha = " << alpha << ")";
  throw SeriesNonConvergenceError(msg.str());
}

double Nussbaum(const NussbaumSpec& spec, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("Nussbaum gain k must be >= 0");
  switch (spec.kind) {
    case NussbaumKind::kMittagLeffler:
      return MittagLeffler(-spec.lambda * std::pow(k, spec.alpha), spec.alpha,
                           spec.series_tol, spec.max_terms);
    case NussbaumKind::kN2:
      return k * std::cos(std::sqrt(std::abs(k)));
    case NussbaumKind::kN3:
      return k * k * std::cos(std::abs(k));
    case NussbaumKind::kN4:
      return std::cos(std::numbers::pi * k / 2.0) * std::exp(k * k);
  }
  return 0.0;
}

void AdaptationConfig::Validate() const {
  for (int n = 0; n < kNumParams; ++n) {
    const ParameterBounds& b = bounds[n];
    if (!(b.lambda_lower > 0.0) || !(b.lambda_upper > 0.0)) {
      std::ostringstream msg;
      msg << "z" << n + 1 << ": confidences must be > 0";
      throw std::invalid_argument(msg.str());
    }
    if (!(b.lower <= b.upper)) {
      std::ostringstream msg;
      msg << "z" << n + 1 << ": lower bound exceeds upper bound";
      throw std::invalid_argument(msg.str());
    }
  }
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
  if (!(motion_speed_floor >= 0.0)) {
    throw std::invalid_argument("motion_speed_floor must be >= 0");
  }
}

ParamVector AdaptationConfig::Lower() const {
  ParamVector v;
  for (int n = 0; n < kNumParams; ++n) v[n] = bounds[n].lower;
  return v;
}

ParamVector AdaptationConfig::Upper() const {
  ParamVector v;
  for (int n = 0; n < kNumParams; ++n) v[n] = bounds[n].upper;
  return v;
}

ParamVector AdaptationConfig::SteadyState() const {
  ParamVector v;
  for (int n = 0; n < kNumParams; ++n) {
    const ParameterBounds& b = bounds[n];
    v[n] = (gamma + b.lambda_upper * b.upper + b.lambda_lower * b.lower) /
           (b.lambda_upper + b.lambda_lower);
  }
  return v;
}

AdaptationConfig AdaptationConfig::TableDefaults() {
  constexpr double kLower = 2.22e-16;
  constexpr std::array<double, kNumParams> kUpper = {
      0.0750, 0.0750, 0.0100, 0.0100, 0.1,
      0.150,  0.151,  0.0100, 0.0100, 0.100};
  AdaptationConfig cfg;
  for (int n = 0; n < kNumParams; ++n) {
    cfg.bounds[n] = {kLower, kUpper[n], 50.0, 1.0};
  }
  return cfg;
}

FrictionParams FrictionFromEstimates(const ParamVector& z, int joint) {
  const int o = joint == 0 ? 0 : 5;
  return {z[o], z[o + 1], z[o + 2], z[o + 3], z[o + 4]};
}

ParamVector EstimatesFromFriction(const FrictionParams& j0,
                                  const FrictionParams& j1) {
  ParamVector z;
  z << j0.mu_d, j0.mu_s, j0.mu_v, j0.theta_dot_t, j0.F_nt,
       j1.mu_d, j1.mu_s, j1.mu_v, j1.theta_dot_t, j1.F_nt;
  return z;
}

double EstimatedFrictionTorque(const ParamVector& z, int joint, double omega,
                               double normal_force) {
  return FrictionTorque(FrictionFromEstimates(z, joint), omega, normal_force);
}

ObserverVector ObserverState::ToVector() const {
  ObserverVector v;
  v << q_hat, q_hat_dot, k, z_hat;
  return v;
}

ObserverState ObserverState::FromVector(const ObserverVector& v) {
  ObserverState s;
  s.q_hat = v.segment<2>(0);
  s.q_hat_dot = v.segment<2>(2);
  s.k = v[4];
  s.z_hat = v.segment<kNumParams>(5);
  return s;
}

GeneralizedForces UasInput(const PhysicalParams& p, const ObserverState& obs,
                           const Vec2& e, const NussbaumSpec& spec) {
  const Mat2 h = InertiaMatrix(p, obs.AsState());
  return GeneralizedForces::FromVector(h * (Nussbaum(spec, obs.k) * e));
}

ParamVector AdaptRhs(const AdaptationConfig& cfg, const ParamVector& z_hat,
                     double e_norm) {
  ParamVector rate;
  for (int n = 0; n < kNumParams; ++n) {
    const ParameterBounds& b = cfg.bounds[n];
    rate[n] = (cfg.gamma + b.lambda_upper * (b.upper - z_hat[n]) +
               b.lambda_lower * (b.lower - z_hat[n])) *
              e_norm;
  }
  return rate;
}

ObserverState ObserverRhs(const ObserverModel& model, const ObserverState& obs,
                          const State& measured, const AdaptationConfig& cfg,
                          const NussbaumSpec& spec) {
  const State est = obs.AsState();
  const Vec2 e = VelocityError(obs, measured);
  const double e_norm = e.norm();

  const Vec2 friction{
      EstimatedFrictionTorque(obs.z_hat, 0, est.omega0,
                              model.normal_force(model.physical, est, 0)),
      EstimatedFrictionTorque(obs.z_hat, 1, est.omega1,
                              model.normal_force(model.physical, est, 1))};
  const GeneralizedForces u = UasInput(model.physical, obs, e, spec);

  ObserverState rate;
  rate.q_hat = obs.q_hat_dot;
  rate.q_hat_dot = SolveAccelerations(model.physical, est, friction,
                                      u.ToVector(), model.coriolis);
  rate.k = e.squaredNorm();
  rate.z_hat = AdaptRhs(cfg, obs.z_hat, e_norm);
  return rate;
}

ParamVector InitialGuessSample(const AdaptationConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  ParamVector z;
  for (int n = 0; n < kNumParams; ++n) {
    const ParameterBounds& b = cfg.bounds[n];
    const double mid = 0.5 * (b.lower + b.upper);
    const double sd = (b.upper - b.lower) / 6.0;
    // Draw even for degenerate bounds so the stream stays aligned.
    const double draw = unit(rng);
    z[n] = std::clamp(mid + sd * draw, b.lower, b.upper);
  }
  return z;
}

namespace {

std::size_t MotionEndIndex(const Trajectory& measured, double floor) {
  if (floor <= 0.0) return measured.size() - 1;
  for (std::size_t i = measured.size(); i-- > 0;) {
    if (measured.states[i].q_dot().norm() >= floor) return i;
  }
  return 0;
}

}  // namespace

IdentificationReport Identify(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& cfg,
                              const NussbaumSpec& spec,
                              const ObserverState& init) {
  const auto start = std::chrono::steady_clock::now();
  cfg.Validate();
  spec.Validate();
  measured.Validate();
  if (measured.size() < 2) {
    throw std::invalid_argument("identification needs at least two samples");
  }
  if (!measured.IsUniform()) {
    throw std::invalid_argument("measured trajectory is not uniformly sampled");
  }

  IdentificationReport report;
  report.method = "uas";
  report.initial_guess = init.z_hat;
  report.parameter_trace.reserve(measured.size());

  const std::size_t motion_end = MotionEndIndex(measured, cfg.motion_speed_floor);
  const double dt = measured.dt();
  ParamVector at_min_error = init.z_hat;
  ParamVector average = ParamVector::Zero();
  std::size_t averaged = 0;

  ObserverVector x = init.ToVector();
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double t = measured.times[i];
    const State& meas = measured.states[i];
    const ObserverState obs = ObserverState::FromVector(x);
    const double e_norm = VelocityError(obs, meas).norm();
    report.parameter_trace.push_back({t, obs.z_hat, obs.k, e_norm});

    if (e_norm < report.min_error_norm) {
      report.min_error_norm = e_norm;
      at_min_error = obs.z_hat;
    }
    if (!report.converged && e_norm < cfg.threshold) {
      report.converged = true;
      report.crossing_time = t;
      report.estimates = obs.z_hat;
    }
    if (report.converged && cfg.averaging && i <= motion_end) {
      average += obs.z_hat;
      ++averaged;
    }

    if (i + 1 == measured.size()) break;
    try {
      x = Rk4Step(
          [&](const ObserverVector& v) {
            return ObserverRhs(model, ObserverState::FromVector(v), meas, cfg,
                               spec)
                .ToVector();
          },
          x, dt);
    } catch (const std::runtime_error& err) {
      std::ostringstream msg;
      msg << "observer integration stopped at t = " << t << ": " << err.what();
      report.aborted = true;
      report.note = msg.str();
      break;
    }
  }

  if (report.converged && cfg.averaging && averaged > 0) {
    report.estimates = average / static_cast<double>(averaged);
  }
  if (!report.converged) report.estimates = at_min_error;

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace furuta
