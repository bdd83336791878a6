// furuta: simulate the tilted Furuta pendulum and identify its joint friction.
//
//   furuta simulate --config run.cfg --out-dir out/
//   furuta identify --config run.cfg --input out/measured.csv --method uas
//   furuta validate --config run.cfg --estimates out/report_uas.txt --input out/trajectory.csv
//   furuta compare  --config run.cfg --seed 7

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "furuta/io.h"

int main(int argc, char** argv) {
  CLI::App app{"Tilted Furuta pendulum simulation and friction identification"};
  app.require_subcommand(1);

  furuta::CommandOptions opts;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out-dir", opts.out_dir, "Output directory")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Simulate the plant, write trajectory and energy CSVs");
  simulate->add_option("--config", opts.config_path, "Config file")->required();

  auto* identify = app.add_subcommand("identify", "Identify friction from a trajectory CSV");
  identify->add_option("--config", opts.config_path, "Config file")->required();
  identify->add_option("--input", opts.input_path, "Trajectory CSV")->required();
  identify->add_option("--method", opts.method, "uas or opt")
      ->check(CLI::IsMember({"uas", "opt"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Fit and spectra of estimates against a reference");
  validate->add_option("--config", opts.config_path, "Config file")->required();
  validate->add_option("--estimates", opts.estimates_path, "Report or list of 10 estimates")->required();
  validate->add_option("--input", opts.input_path, "Reference trajectory CSV")->required();

  auto* compare = app.add_subcommand("compare", "Run both methods on simulated data");
  compare->add_option("--config", opts.config_path, "Config file")->required();

  // Global options are accepted after the subcommand too.
  for (auto* sub : {simulate, identify, validate, compare}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) opts.seed = seed;

  try {
    if (*simulate) return furuta::CmdSimulate(opts, std::cout);
    if (*identify) return furuta::CmdIdentify(opts, std::cout);
    if (*validate) return furuta::CmdValidate(opts, std::cout);
    if (*compare) return furuta::CmdCompare(opts, std::cout);
  } catch (const furuta::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const furuta::CsvParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
