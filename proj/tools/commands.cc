#include "commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "furuta/baseline.h"
#include "furuta/io.h"
#include "furuta/uas.h"

namespace furuta {
namespace {

namespace fs = std::filesystem;

fs::path PrepareOutDir(const CommandOptions& opts) {
  fs::path dir(opts.out_dir.empty() ? "." : opts.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  auto out = OpenOut(path);
  out << text;
}

// Fit of a simulated response against a reference; NaN if the simulation
// with these parameters fails.
FitReport FitAgainst(const RunConfig& cfg, const ParamVector& z,
                     const Trajectory& reference) {
  FitReport fit;
  try {
    const Trajectory sim =
        SimulateWithEstimates(cfg, z, reference.states.front(), reference);
    fit = PositionFit(reference, sim);
  } catch (const std::runtime_error&) {
    fit.r2_theta0 = fit.r2_theta1 = std::nan("");
  }
  return fit;
}

std::string Fixed(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

RunConfig LoadRunConfig(const CommandOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("--config is required");
  RunConfig cfg = LoadConfig(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

Scenario GenerateScenario(const RunConfig& cfg) {
  Scenario sc;
  sc.truth = Simulate(cfg.TruthPlant(), cfg.initial_condition, cfg.sim);
  sc.measured = AddNoise(sc.truth, cfg.MeasurementSigma(), cfg.MeasurementSeed());
  return sc;
}

ObserverState InitialObserverState(const RunConfig& cfg, const Trajectory& measured) {
  if (measured.empty()) throw std::invalid_argument("empty measured trajectory");
  const State ic = PerturbState(measured.states.front(), cfg.InitialConditionSigma(),
                                cfg.InitialConditionSeed());
  ObserverState obs;
  obs.q_hat = ic.q();
  obs.q_hat_dot = ic.q_dot();
  obs.k = cfg.k0;
  obs.z_hat = InitialGuessSample(cfg.adaptation, cfg.InitialGuessSeed());
  return obs;
}

IdentificationReport RunIdentification(const RunConfig& cfg,
                                       const Trajectory& measured,
                                       const std::string& method) {
  if (method == "uas") {
    return Identify(measured, cfg.Observer(), cfg.adaptation, cfg.nussbaum,
                    InitialObserverState(cfg, measured));
  }
  if (method == "opt") {
    return Optimize(measured, cfg.Observer(), cfg.adaptation, cfg.opt,
                    InitialGuessSample(cfg.adaptation, cfg.InitialGuessSeed()));
  }
  throw ConfigError("unknown method '" + method + "' (expected uas or opt)");
}

Trajectory SimulateWithEstimates(const RunConfig& cfg, const ParamVector& z,
                                 const State& ic, const Trajectory& like) {
  const double dt = like.size() > 1 ? like.dt() : cfg.sim.dt;
  Trajectory sim = Simulate(PlantFromEstimates(cfg.Observer(), z), ic, dt, like.size());
  sim.times = like.times;
  return sim;
}

ParamVector ReadEstimates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  std::vector<bool> seen(kNumParams, false);
  ParamVector keyed = ParamVector::Zero();
  bool has_keys = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    try {
      if (eq != std::string::npos) {
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t\r") + 1);
        if (key.size() > 1 && key[0] == 'z' &&
            key.find_first_not_of("0123456789", 1) == std::string::npos) {
          const int n = std::stoi(key.substr(1));
          if (n >= 1 && n <= kNumParams) {
            keyed[n - 1] = ParseDouble(value);
            seen[n - 1] = true;
            has_keys = true;
          }
        }
        continue;
      }
      for (char& c : line) {
        if (c == ',' || c == ';') c = ' ';
      }
      std::istringstream fields(line);
      std::string token;
      while (fields >> token) values.push_back(ParseDouble(token));
    } catch (const std::invalid_argument& e) {
      throw CsvParseError(path, line_no, e.what());
    }
  }
  if (has_keys) {
    for (int n = 0; n < kNumParams; ++n) {
      if (!seen[n]) {
        throw std::runtime_error(path + ": missing estimate z" + std::to_string(n + 1));
      }
    }
    return keyed;
  }
  if (values.size() != kNumParams) {
    throw std::runtime_error(path + ": expected 10 estimates, found " +
                             std::to_string(values.size()));
  }
  ParamVector z;
  for (int n = 0; n < kNumParams; ++n) z[n] = values[n];
  return z;
}

std::string FormatReport(const IdentificationReport& report, const FitReport& fit,
                         double experiment_time, double sampling_frequency) {
  std::ostringstream out;
  out << "method=" << report.method << '\n';
  for (int n = 0; n < kNumParams; ++n) {
    out << 'z' << n + 1 << '=' << FormatDouble(report.estimates[n]) << '\n';
  }
  for (int n = 0; n < kNumParams; ++n) {
    out << "initial.z" << n + 1 << '=' << FormatDouble(report.initial_guess[n]) << '\n';
  }
  out << "fit_theta0=" << FormatDouble(fit.r2_theta0) << '\n';
  out << "fit_theta1=" << FormatDouble(fit.r2_theta1) << '\n';
  out << "wall_time_s=" << FormatDouble(report.wall_time_s) << '\n';
  out << "normalized_time="
      << FormatDouble(NormalizedTime(report.wall_time_s, experiment_time,
                                     sampling_frequency))
      << '\n';
  out << "converged=" << (report.converged ? "true" : "false") << '\n';
  if (report.method == "uas") {
    out << "crossing_time=" << FormatDouble(report.crossing_time) << '\n';
    out << "min_error_norm=" << FormatDouble(report.min_error_norm) << '\n';
    out << "aborted=" << (report.aborted ? "true" : "false") << '\n';
  } else {
    out << "evaluations=" << report.evaluations << '\n';
    out << "best_objective=" << FormatDouble(report.best_objective) << '\n';
    out << "budget_exhausted=" << (report.budget_exhausted ? "true" : "false") << '\n';
  }
  if (!report.note.empty()) out << "note=" << report.note << '\n';
  return out.str();
}

int CmdSimulate(const CommandOptions& opts, std::ostream& out) {
  const RunConfig cfg = LoadRunConfig(opts);
  const fs::path dir = PrepareOutDir(opts);
  const Scenario sc = GenerateScenario(cfg);

  WriteTrajectoryFile((dir / "trajectory.csv").string(), sc.truth);
  if (cfg.MeasurementSigma() > 0.0) {
    WriteTrajectoryFile((dir / "measured.csv").string(), sc.measured);
  }
  const std::vector<double> energy = EnergyTrace(cfg.physical, sc.truth);
  {
    auto f = OpenOut(dir / "energy.csv");
    WriteEnergyCsv(f, sc.truth, energy);
  }
  out << "samples=" << sc.truth.size() << '\n'
      << "duration=" << FormatDouble(sc.truth.duration()) << '\n'
      << "energy_initial=" << FormatDouble(energy.front()) << '\n'
      << "energy_final=" << FormatDouble(energy.back()) << '\n'
      << "trajectory=" << (dir / "trajectory.csv").string() << '\n';
  if (cfg.MeasurementSigma() > 0.0) {
    out << "measured=" << (dir / "measured.csv").string() << '\n';
  }
  return 0;
}

int CmdIdentify(const CommandOptions& opts, std::ostream& out) {
  const RunConfig cfg = LoadRunConfig(opts);
  if (opts.input_path.empty()) throw ConfigError("--input is required");
  if (opts.method != "uas" && opts.method != "opt") {
    throw ConfigError("unknown method '" + opts.method + "' (expected uas or opt)");
  }
  const Trajectory measured = ReadTrajectoryFile(opts.input_path);
  if (measured.size() < 2) throw std::runtime_error("input needs at least two samples");
  const fs::path dir = PrepareOutDir(opts);

  const IdentificationReport report = RunIdentification(cfg, measured, opts.method);
  const FitReport fit = FitAgainst(cfg, report.estimates, measured);
  const std::string text =
      FormatReport(report, fit, measured.duration(), 1.0 / measured.dt());
  WriteText(dir / ("report_" + opts.method + ".txt"), text);
  if (opts.method == "uas") {
    auto f = OpenOut(dir / "parameter_trace.csv");
    WriteParameterTraceCsv(f, report.parameter_trace);
  } else {
    auto f = OpenOut(dir / "objective_trace.csv");
    WriteObjectiveTraceCsv(f, report.objective_trace);
  }
  out << text;
  return 0;
}

int CmdValidate(const CommandOptions& opts, std::ostream& out) {
  const RunConfig cfg = LoadRunConfig(opts);
  if (opts.input_path.empty()) throw ConfigError("--input is required");
  if (opts.estimates_path.empty()) throw ConfigError("--estimates is required");
  const ParamVector z = ReadEstimates(opts.estimates_path);
  const Trajectory reference = ReadTrajectoryFile(opts.input_path);
  if (reference.size() < 2) throw std::runtime_error("reference needs at least two samples");
  const fs::path dir = PrepareOutDir(opts);

  const Trajectory sim =
      SimulateWithEstimates(cfg, z, reference.states.front(), reference);
  const FitReport fit = PositionFit(reference, sim);
  WriteTrajectoryFile((dir / "validation_trajectory.csv").string(), sim);
  {
    auto f = OpenOut(dir / "spectrum_reference.csv");
    WriteSpectrumCsv(f, ComputeSpectrum(reference, Channel::kTheta0),
                     ComputeSpectrum(reference, Channel::kTheta1));
  }
  {
    auto f = OpenOut(dir / "spectrum_estimate.csv");
    WriteSpectrumCsv(f, ComputeSpectrum(sim, Channel::kTheta0),
                     ComputeSpectrum(sim, Channel::kTheta1));
  }
  std::ostringstream text;
  text << "fit_theta0=" << FormatDouble(fit.r2_theta0) << '\n'
       << "fit_theta1=" << FormatDouble(fit.r2_theta1) << '\n';
  WriteText(dir / "validation.txt", text.str());
  out << text.str();
  return 0;
}

int CmdCompare(const CommandOptions& opts, std::ostream& out) {
  const RunConfig cfg = LoadRunConfig(opts);
  const fs::path dir = PrepareOutDir(opts);
  const Scenario sc = GenerateScenario(cfg);

  const IdentificationReport uas = RunIdentification(cfg, sc.measured, "uas");
  const IdentificationReport opt = RunIdentification(cfg, sc.measured, "opt");
  const FitReport uas_fit = FitAgainst(cfg, uas.estimates, sc.truth);
  const FitReport opt_fit = FitAgainst(cfg, opt.estimates, sc.truth);
  const FitReport initial_fit = FitAgainst(cfg, uas.initial_guess, sc.truth);

  const double experiment_time = sc.truth.duration();
  const double fs_hz = 1.0 / cfg.sim.dt;

  // Deterministic part: everything except wall-clock timing.
  std::ostringstream table;
  table << "seed=" << cfg.seed << '\n'
        << "samples=" << sc.measured.size() << '\n'
        << "measurement_sigma=" << FormatDouble(cfg.MeasurementSigma()) << '\n'
        << "#\n"
        << "# method   fit_theta0[%]   fit_theta1[%]\n"
        << "initial  " << std::setw(14) << Fixed(initial_fit.r2_theta0, 4)
        << std::setw(16) << Fixed(initial_fit.r2_theta1, 4) << '\n'
        << "uas      " << std::setw(14) << Fixed(uas_fit.r2_theta0, 4)
        << std::setw(16) << Fixed(uas_fit.r2_theta1, 4) << '\n'
        << "opt      " << std::setw(14) << Fixed(opt_fit.r2_theta0, 4)
        << std::setw(16) << Fixed(opt_fit.r2_theta1, 4) << '\n'
        << "#\n";
  table << "uas.converged=" << (uas.converged ? "true" : "false") << '\n'
        << "uas.crossing_time=" << FormatDouble(uas.crossing_time) << '\n'
        << "opt.evaluations=" << opt.evaluations << '\n'
        << "opt.best_objective=" << FormatDouble(opt.best_objective) << '\n';
  for (int n = 0; n < kNumParams; ++n) {
    table << kParamNames[n] << ".true="
          << FormatDouble(EstimatesFromFriction(cfg.truth0, cfg.truth1)[n])
          << " uas=" << FormatDouble(uas.estimates[n])
          << " opt=" << FormatDouble(opt.estimates[n]) << '\n';
  }

  std::ostringstream timing;
  timing << "# method   wall_time[s]   normalized_time\n"
         << "uas  " << std::setw(14) << Fixed(uas.wall_time_s, 4) << std::setw(18)
         << NormalizedTime(uas.wall_time_s, experiment_time, fs_hz) << '\n'
         << "opt  " << std::setw(14) << Fixed(opt.wall_time_s, 4) << std::setw(18)
         << NormalizedTime(opt.wall_time_s, experiment_time, fs_hz) << '\n'
         << "time_ratio=" << Fixed(opt.wall_time_s / uas.wall_time_s, 2) << '\n';

  WriteText(dir / "comparison.txt", table.str());
  WriteText(dir / "timing.txt", timing.str());
  {
    auto f = OpenOut(dir / "parameter_trace.csv");
    WriteParameterTraceCsv(f, uas.parameter_trace);
  }
  {
    auto f = OpenOut(dir / "objective_trace.csv");
    WriteObjectiveTraceCsv(f, opt.objective_trace);
  }
  out << table.str() << timing.str();
  return 0;
}

}  // namespace furuta
