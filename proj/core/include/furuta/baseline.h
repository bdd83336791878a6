#pragma once

// Grey-box identification by direct trajectory fitting: bounded Nelder-Mead
// over the ten friction parameters, each evaluation a full plant simulation.

#include <cstddef>
#include <cstdint>

#include "furuta/report.h"
#include "furuta/sim.h"
#include "furuta/uas.h"

namespace furuta {

struct OptConfig {
  std::size_t max_evals = 2000;
  // Initial simplex edge, as a fraction of each parameter's bound width.
  double init_simplex_scale = 0.1;
  // Stop when (worst - best) <= tolerance * (|best| + tiny).
  double tolerance = 1e-10;

  void Validate() const;
};

// Plant with friction z and the observer's structural knowledge.
PlantModel PlantFromEstimates(const ObserverModel& model, const ParamVector& z);

// Sum over samples of squared position error on both joints, simulating
// from the first measured state with the measured sampling. Throws
// std::invalid_argument on an empty trajectory. If the simulation fails the
// call returns `failure_value` and sets *failed when given.
double Objective(const ParamVector& z, const Trajectory& measured,
                 const ObserverModel& model,
                 double failure_value = std::numeric_limits<double>::infinity(),
                 bool* failed = nullptr);

// Bounded simplex search (reflect / expand / contract / shrink). Candidate
// points are projected onto the bounds before evaluation. Simulation failures
// score 1e6 x the objective of the start point. Independent evaluations
// (initial simplex, shrink) run concurrently; the result does not depend on
// scheduling.
IdentificationReport Optimize(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& bounds,
                              const OptConfig& cfg, const ParamVector& start);

// Starts from InitialGuessSample(bounds, seed).
IdentificationReport Optimize(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& bounds,
                              const OptConfig& cfg, std::uint64_t seed);

}  // namespace furuta
