#pragma once

// Subcommands of the `furuta` tool. Each returns the process exit code and
// throws on configuration, I/O or parse errors (main maps those to 1/2).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.h"
#include "furuta/metrics.h"
#include "furuta/report.h"
#include "furuta/sim.h"

namespace furuta {

struct CommandOptions {
  std::string config_path;
  std::string input_path;
  std::string estimates_path;
  std::string method = "uas";
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

// Loads the config and applies the --seed override.
RunConfig LoadRunConfig(const CommandOptions& opts);

// Simulated experiment: clean plant response and the noisy measurements.
struct Scenario {
  Trajectory truth;
  Trajectory measured;
};
Scenario GenerateScenario(const RunConfig& cfg);

// q_hat(0) = measured(0) perturbed by the IC noise, z_hat(0) sampled around
// the bound midpoints, k(0) = k0.
ObserverState InitialObserverState(const RunConfig& cfg, const Trajectory& measured);

// method is "uas" or "opt"; both start from the same sampled guess.
IdentificationReport RunIdentification(const RunConfig& cfg,
                                       const Trajectory& measured,
                                       const std::string& method);

// Plant response with friction z from `ic`, sampled like `like`.
Trajectory SimulateWithEstimates(const RunConfig& cfg, const ParamVector& z,
                                 const State& ic, const Trajectory& like);

// Reads ten estimates: either `z1=...` .. `z10=...` lines (a report file) or
// ten bare numbers separated by whitespace or commas.
ParamVector ReadEstimates(const std::string& path);

// key=value report of an identification run.
std::string FormatReport(const IdentificationReport& report, const FitReport& fit,
                         double experiment_time, double sampling_frequency);

int CmdSimulate(const CommandOptions& opts, std::ostream& out);
int CmdIdentify(const CommandOptions& opts, std::ostream& out);
int CmdValidate(const CommandOptions& opts, std::ostream& out);
int CmdCompare(const CommandOptions& opts, std::ostream& out);

}  // namespace furuta
