#include "furuta/baseline.h"

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <sstream>
#include <vector>

namespace furuta {

void OptConfig::Validate() const {
  if (max_evals == 0) throw std::invalid_argument("max_evals must be > 0");
  if (!(init_simplex_scale > 0.0)) {
    throw std::invalid_argument("init_simplex_scale must be > 0");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
}

PlantModel PlantFromEstimates(const ObserverModel& model, const ParamVector& z) {
  PlantModel plant;
  plant.physical = model.physical;
  plant.joint0 = FrictionFromEstimates(z, 0);
  plant.joint1 = FrictionFromEstimates(z, 1);
  plant.normal_force = model.normal_force;
  plant.coriolis = model.coriolis;
  return plant;
}

double Objective(const ParamVector& z, const Trajectory& measured,
                 const ObserverModel& model, double failure_value,
                 bool* failed) {
  if (measured.empty()) throw std::invalid_argument("empty measured trajectory");
  if (failed) *failed = false;
  const double dt = measured.size() > 1 ? measured.dt() : 1.0;
  Trajectory sim;
  try {
    sim = Simulate(PlantFromEstimates(model, z), measured.states.front(), dt,
                   measured.size());
  } catch (const std::runtime_error&) {
    if (failed) *failed = true;
    return failure_value;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double d0 = sim.states[i].theta0 - measured.states[i].theta0;
    const double d1 = sim.states[i].theta1 - measured.states[i].theta1;
    sum += d0 * d0 + d1 * d1;
  }
  return sum;
}

namespace {

struct Vertex {
  ParamVector x;
  double f;
};

class BudgetedObjective {
 public:
  BudgetedObjective(const Trajectory& measured, const ObserverModel& model,
                    std::size_t budget, IdentificationReport& report)
      : measured_(measured), model_(model), budget_(budget), report_(report) {}

  bool HasBudget(std::size_t n = 1) const { return used_ + n <= budget_; }
  std::size_t remaining() const { return budget_ - used_; }
  void set_penalty(double penalty) { penalty_ = penalty; }
  std::size_t failures() const { return failures_; }

  double Evaluate(const ParamVector& x) { return EvaluateBatch({x}).front(); }

  // Evaluations run concurrently; bookkeeping happens in input order.
  std::vector<double> EvaluateBatch(const std::vector<ParamVector>& xs) {
    std::vector<double> values(xs.size());
    std::vector<char> failed(xs.size(), 0);
    if (xs.size() == 1) {
      bool f = false;
      values[0] = Objective(xs[0], measured_, model_, penalty_, &f);
      failed[0] = f;
    } else {
      std::vector<std::future<void>> jobs;
      jobs.reserve(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          bool f = false;
          values[i] = Objective(xs[i], measured_, model_, penalty_, &f);
          failed[i] = f;
        }));
      }
      for (auto& job : jobs) job.get();
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ++used_;
      if (failed[i]) ++failures_;
      if (values[i] < best_) {
        best_ = values[i];
        best_x_ = xs[i];
      }
      report_.objective_trace.push_back({used_, values[i], best_});
    }
    return values;
  }

  double best() const { return best_; }
  const ParamVector& best_x() const { return best_x_; }
  std::size_t used() const { return used_; }

 private:
  const Trajectory& measured_;
  const ObserverModel& model_;
  std::size_t budget_;
  IdentificationReport& report_;
  double penalty_ = std::numeric_limits<double>::infinity();
  std::size_t used_ = 0;
  std::size_t failures_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  ParamVector best_x_ = ParamVector::Zero();
};

}  // namespace

IdentificationReport Optimize(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& bounds,
                              const OptConfig& cfg, const ParamVector& start) {
  const auto t_start = std::chrono::steady_clock::now();
  cfg.Validate();
  bounds.Validate();
  if (measured.empty()) throw std::invalid_argument("empty measured trajectory");

  const ParamVector lower = bounds.Lower();
  const ParamVector upper = bounds.Upper();
  auto project = [&](const ParamVector& x) -> ParamVector {
    return x.cwiseMax(lower).cwiseMin(upper);
  };

  IdentificationReport report;
  report.method = "opt";
  report.initial_guess = project(start);

  BudgetedObjective objective(measured, model, cfg.max_evals, report);
  const double f0 = objective.Evaluate(report.initial_guess);
  objective.set_penalty(1e6 * (std::isfinite(f0) ? std::max(f0, 1e-6) : 1.0));

  constexpr int n = kNumParams;
  std::vector<Vertex> simplex{{report.initial_guess, f0}};
  bool converged = false;

  // Initial simplex: one axis step per parameter, flipped at the upper bound.
  std::vector<ParamVector> axis_points;
  for (int i = 0; i < n; ++i) {
    const double step = cfg.init_simplex_scale * (upper[i] - lower[i]);
    ParamVector x = report.initial_guess;
    x[i] += step;
    x = project(x);
    if (x[i] == report.initial_guess[i]) {
      x[i] = report.initial_guess[i] - step;
      x = project(x);
    }
    axis_points.push_back(x);
  }
  const std::size_t take = std::min<std::size_t>(n, objective.remaining());
  axis_points.resize(take);
  const std::vector<double> axis_values = objective.EvaluateBatch(axis_points);
  for (std::size_t i = 0; i < take; ++i) {
    simplex.push_back({axis_points[i], axis_values[i]});
  }

  if (simplex.size() == n + 1) {
    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(),
                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      const double f_best = simplex.front().f;
      const double f_worst = simplex.back().f;
      if (f_worst - f_best <= cfg.tolerance * (std::abs(f_best) + 1e-300)) {
        converged = true;
        break;
      }
      if (!objective.HasBudget()) break;

      ParamVector centroid = ParamVector::Zero();
      for (int i = 0; i < n; ++i) centroid += simplex[i].x;
      centroid /= static_cast<double>(n);
      Vertex& worst = simplex.back();

      const ParamVector xr = project(centroid + (centroid - worst.x));
      const double fr = objective.Evaluate(xr);

      if (fr < f_best) {
        if (!objective.HasBudget()) {
          worst = {xr, fr};
          break;
        }
        const ParamVector xe = project(centroid + 2.0 * (centroid - worst.x));
        const double fe = objective.Evaluate(xe);
        worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        continue;
      }
      if (fr < simplex[n - 1].f) {
        worst = {xr, fr};
        continue;
      }
      if (!objective.HasBudget()) break;

      bool accepted = false;
      if (fr < worst.f) {
        const ParamVector xc = project(centroid + 0.5 * (xr - centroid));
        const double fc = objective.Evaluate(xc);
        if (fc <= fr) {
          worst = {xc, fc};
          accepted = true;
        }
      } else {
        const ParamVector xc = project(centroid + 0.5 * (worst.x - centroid));
        const double fc = objective.Evaluate(xc);
        if (fc < worst.f) {
          worst = {xc, fc};
          accepted = true;
        }
      }
      if (accepted) continue;

      // Shrink toward the best vertex.
      std::vector<ParamVector> shrunk;
      const std::size_t room = std::min<std::size_t>(n, objective.remaining());
      for (std::size_t i = 1; i <= room; ++i) {
        shrunk.push_back(project(simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x)));
      }
      if (shrunk.empty()) break;
      const std::vector<double> values = objective.EvaluateBatch(shrunk);
      for (std::size_t i = 0; i < shrunk.size(); ++i) {
        simplex[i + 1] = {shrunk[i], values[i]};
      }
    }
  }

  report.estimates = objective.best_x();
  report.best_objective = objective.best();
  report.evaluations = objective.used();
  report.converged = converged;
  report.budget_exhausted = !converged && !objective.HasBudget();
  if (objective.failures() > 0) {
    std::ostringstream msg;
    msg << objective.failures() << " simulation failure(s) scored with penalty";
    report.note = msg.str();
  }
  report.wall_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();
  return report;
}

IdentificationReport Optimize(const Trajectory& measured,
                              const ObserverModel& model,
                              const AdaptationConfig& bounds,
                              const OptConfig& cfg, std::uint64_t seed) {
  return Optimize(measured, model, bounds, cfg, InitialGuessSample(bounds, seed));
}

}  // namespace furuta
