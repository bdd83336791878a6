#include <benchmark/benchmark.h>

#include <numbers>

#include "furuta/baseline.h"
#include "furuta/metrics.h"
#include "furuta/sim.h"
#include "furuta/uas.h"

namespace {

using namespace furuta;

PlantModel ReferencePlant() {
  PlantModel plant;
  plant.physical.phi = std::numbers::pi / 6;
  plant.joint0 = {5e-4, 6e-4, 2.5e-4, 5e-3, 1e-2};
  plant.joint1 = {6e-4, 7e-4, 2.5e-4, 5e-3, 1e-2};
  return plant;
}

const State kIc{0.0, 2 * std::numbers::pi / 3, 0.0, 0.0};

Trajectory Measured(double duration) {
  SimConfig sim;
  sim.duration = duration;
  return AddNoise(Simulate(ReferencePlant(), kIc, sim), 0.1, 1);
}

void BM_DynamicsRhs(benchmark::State& state) {
  const PlantModel plant = ReferencePlant();
  const State s{0.3, 1.2, 0.5, -2.0};
  for (auto _ : state) benchmark::DoNotOptimize(DynamicsRhs(plant, s));
}
BENCHMARK(BM_DynamicsRhs);

void BM_MittagLeffler(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MittagLeffler(-k * k * k, 3.0));
}
BENCHMARK(BM_MittagLeffler)->Arg(1)->Arg(4)->Arg(8);

// Samples per second of simulated plant time.
void BM_Simulate(benchmark::State& state) {
  const PlantModel plant = ReferencePlant();
  SimConfig sim;
  sim.duration = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Simulate(plant, kIc, sim));
  state.SetItemsProcessed(state.iterations() * sim.NumSamples());
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(35)->Unit(benchmark::kMillisecond);

void BM_Identify(benchmark::State& state) {
  const Trajectory measured = Measured(35.0);
  ObserverModel model;
  model.physical = ReferencePlant().physical;
  const AdaptationConfig cfg = AdaptationConfig::TableDefaults();
  ObserverState init;
  init.q_hat = measured.states.front().q();
  init.q_hat_dot = measured.states.front().q_dot();
  init.k = 0.01;
  init.z_hat = InitialGuessSample(cfg, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Identify(measured, model, cfg, NussbaumSpec{}, init));
  }
}
BENCHMARK(BM_Identify)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const Trajectory measured = Measured(35.0);
  ObserverModel model;
  model.physical = ReferencePlant().physical;
  const ParamVector z = InitialGuessSample(AdaptationConfig::TableDefaults(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Objective(z, measured, model));
}
BENCHMARK(BM_Objective)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const Trajectory traj = Measured(35.0);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeSpectrum(traj, Channel::kTheta1));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
