#pragma once

// Fixed-step RK4 propagation, trajectory recording and measurement noise.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "furuta/model.h"

namespace furuta {

class NonFiniteStateError : public std::runtime_error {
 public:
  NonFiniteStateError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// One classical fourth-order Runge-Kutta step of x' = rhs(x). Works for any
// Eigen column vector type. Throws NonFiniteStateError (time = NaN) when the
// result is not finite; callers that know the time rethrow with it.
template <typename Vector, typename Rhs>
Vector Rk4Step(Rhs&& rhs, const Vector& x, double dt) {
  const Vector k1 = rhs(x);
  const Vector k2 = rhs(Vector(x + 0.5 * dt * k1));
  const Vector k3 = rhs(Vector(x + 0.5 * dt * k2));
  const Vector k4 = rhs(Vector(x + dt * k3));
  Vector next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    throw NonFiniteStateError("RK4 step produced a non-finite state",
                              std::nan(""));
  }
  return next;
}

struct SimConfig {
  double dt = 1e-3;
  double duration = 35.0;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  bool noise_enabled = false;

  void Validate() const;
  // floor(duration / dt) + 1, robust to representation error in the ratio.
  std::size_t NumSamples() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const { return states.size(); }
  bool empty() const { return states.empty(); }
  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
  double duration() const { return empty() ? 0.0 : times.back() - times.front(); }

  // Throws std::invalid_argument if times are not strictly increasing or the
  // sizes disagree.
  void Validate() const;
  // True when every interval matches the first one within rel_tol.
  bool IsUniform(double rel_tol = 1e-6) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// External torque applied at time t and state s.
using InputFunction = std::function<GeneralizedForces(double t, const State& s)>;

// Records every step; sample i sits at t = i * dt. Without input the passive
// plant is simulated. Integration failures are rethrown as
// NonFiniteStateError carrying the timestamp of the failing step.
Trajectory Simulate(const PlantModel& plant, const State& ic,
                    const SimConfig& cfg, const InputFunction& input = {});

// Same, with an explicit sample count (sample i at t = i * dt).
Trajectory Simulate(const PlantModel& plant, const State& ic, double dt,
                    std::size_t num_samples, const InputFunction& input = {});

// i.i.d. zero-mean Gaussian noise on all four channels of every sample.
// Deterministic for a given seed; sigma = 0 returns the input unchanged.
Trajectory AddNoise(const Trajectory& traj, double sigma, std::uint64_t seed);

// Same noise model applied to a single state (observer initial conditions).
State PerturbState(const State& s, double sigma, std::uint64_t seed);

// Mechanical energy along a trajectory.
std::vector<double> EnergyTrace(const PhysicalParams& p, const Trajectory& traj);

}  // namespace furuta
