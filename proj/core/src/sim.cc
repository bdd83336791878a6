#include "furuta/sim.h"

#include <random>
#include <sstream>

namespace furuta {

void SimConfig::Validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be > 0");
  }
  if (!(duration >= dt) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be >= dt");
  }
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise_sigma must be >= 0");
  }
}

std::size_t SimConfig::NumSamples() const {
  const double steps = std::floor(duration / dt + 1e-9);
  return static_cast<std::size_t>(steps) + 1;
}

void Trajectory::Validate() const {
  if (times.size() != states.size()) {
    throw std::invalid_argument("trajectory times/states length mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      std::ostringstream msg;
      msg << "trajectory times not strictly increasing at index " << i;
      throw std::invalid_argument(msg.str());
    }
  }
}

bool Trajectory::IsUniform(double rel_tol) const {
  if (times.size() < 2) return true;
  const double h = times[1] - times[0];
  if (!(h > 0.0)) return false;
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - h) > rel_tol * h) return false;
  }
  return true;
}

Trajectory Simulate(const PlantModel& plant, const State& ic,
                    const SimConfig& cfg, const InputFunction& input) {
  cfg.Validate();
  return Simulate(plant, ic, cfg.dt, cfg.NumSamples(), input);
}

Trajectory Simulate(const PlantModel& plant, const State& ic, double dt,
                    std::size_t n, const InputFunction& input) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (n == 0) throw std::invalid_argument("need at least one sample");
  Trajectory traj;
  traj.times.reserve(n);
  traj.states.reserve(n);
  traj.times.push_back(0.0);
  traj.states.push_back(ic);

  Vec4 x = ic.ToVector();
  for (std::size_t i = 1; i < n; ++i) {
    const double t = static_cast<double>(i - 1) * dt;
    // Input is held over the step.
    GeneralizedForces u;
    if (input) u = input(t, State::FromVector(x));
    try {
      x = Rk4Step(
          [&](const Vec4& v) {
            return DynamicsRhs(plant, State::FromVector(v), u);
          },
          x, dt);
    } catch (const NonFiniteStateError& e) {
      std::ostringstream msg;
      msg << e.what() << " at t = " << t;
      throw NonFiniteStateError(msg.str(), t);
    } catch (const SingularInertiaError& e) {
      std::ostringstream msg;
      msg << e.what() << " at t = " << t;
      throw NonFiniteStateError(msg.str(), t);
    }
    traj.times.push_back(static_cast<double>(i) * dt);
    traj.states.push_back(State::FromVector(x));
  }
  return traj;
}

Trajectory AddNoise(const Trajectory& traj, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  Trajectory out = traj;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (State& s : out.states) {
    s.theta0 += noise(rng);
    s.theta1 += noise(rng);
    s.omega0 += noise(rng);
    s.omega1 += noise(rng);
  }
  return out;
}

State PerturbState(const State& s, double sigma, std::uint64_t seed) {
  Trajectory single{{0.0}, {s}};
  return AddNoise(single, sigma, seed).states.front();
}

std::vector<double> EnergyTrace(const PhysicalParams& p, const Trajectory& traj) {
  std::vector<double> energy;
  energy.reserve(traj.size());
  for (const State& s : traj.states) energy.push_back(MechanicalEnergy(p, s));
  return energy;
}

}  // namespace furuta
