#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.h"
#include "config.h"
#include "furuta/io.h"

namespace furuta {
namespace {

namespace fs = std::filesystem;

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("furuta_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path WriteConfig(const std::string& text, const std::string& name = "run.cfg") {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path;
  }

  // Runs the installed binary; returns its exit status.
  int Run(const std::string& args, const std::string& log = "log.txt") {
    const std::string cmd = std::string(FURUTA_CLI_PATH) + " " + args + " > " +
                            (dir_ / log).string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static constexpr const char* kShortRun =
      "# short scenario\n"
      "duration = 2\n"
      "opt_max_evals = 30\n"
      "phi_deg = 30\n";

  fs::path dir_;
};

TEST(ParseConfig, DefaultsAndOverrides) {
  std::istringstream in(
      "m1 = 0.5   # heavier arm\n"
      "\n"
      "phi_deg = 45\n"
      "z_u.mu_d0 = 0.08\n"
      "lambda_l.F_nt1 = 20\n"
      "nussbaum = n3\n"
      "noise_enabled = false\n"
      "seed = 12\n");
  const RunConfig cfg = ParseConfig(in);
  EXPECT_EQ(cfg.physical.m1, 0.5);
  EXPECT_NEAR(cfg.physical.phi, std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(cfg.adaptation.bounds[0].upper, 0.08);
  EXPECT_EQ(cfg.adaptation.bounds[9].lambda_lower, 20.0);
  EXPECT_EQ(cfg.nussbaum.kind, NussbaumKind::kN3);
  EXPECT_EQ(cfg.MeasurementSigma(), 0.0);
  EXPECT_EQ(cfg.seed, 12u);
  EXPECT_EQ(cfg.physical.m2, 0.128);
  EXPECT_EQ(cfg.truth0.mu_d, 5e-4);
  EXPECT_EQ(cfg.sim.dt, 1e-3);
}

TEST(ParseConfig, ErrorsNameTheLine) {
  const char* bad[] = {"m1 = 1\nbogus = 3\n", "m1 = 1\nm2\n", "m1 = 1\nm2 = heavy\n",
                       "m1 = 1\nm2 =\n"};
  for (const char* text : bad) {
    std::istringstream in(text);
    try {
      ParseConfig(in, "run.cfg");
      FAIL() << text;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos) << e.what();
    }
  }
}

TEST(ParseConfig, RejectsInvalidValues) {
  std::istringstream zero_phi("phi_deg = 0\n");
  EXPECT_THROW(ParseConfig(zero_phi), ConfigError);
  std::istringstream bad_dt("dt = -1\n");
  EXPECT_THROW(ParseConfig(bad_dt), ConfigError);
}

TEST(ParseConfig, NoiseUnits) {
  std::istringstream in("noise_units = deg\nnoise_sigma = 0.1\n");
  const RunConfig cfg = ParseConfig(in);
  EXPECT_NEAR(cfg.MeasurementSigma(), 0.1 * std::numbers::pi / 180, 1e-18);
}

TEST(RunConfig, DerivedSeedsAreDistinct) {
  RunConfig cfg;
  cfg.seed = 5;
  EXPECT_NE(cfg.MeasurementSeed(), cfg.InitialConditionSeed());
  EXPECT_NE(cfg.InitialConditionSeed(), cfg.InitialGuessSeed());
}

TEST_F(CliTest, ReadEstimatesFormats) {
  const fs::path list = dir_ / "list.txt";
  std::ofstream(list) << "1,2,3,4,5\n6 7 8 9 10\n";
  EXPECT_EQ(ReadEstimates(list.string()), ParamVector::LinSpaced(1.0, 10.0));

  const fs::path keyed = dir_ / "report.txt";
  std::ofstream kf(keyed);
  kf << "method=uas\n";
  for (int n = 1; n <= 10; ++n) kf << "z" << n << "=" << n << "\ninitial.z" << n << "=0\n";
  kf.close();
  EXPECT_EQ(ReadEstimates(keyed.string()), ParamVector::LinSpaced(1.0, 10.0));

  const fs::path nine = dir_ / "nine.txt";
  std::ofstream(nine) << "1 2 3 4 5 6 7 8 9\n";
  EXPECT_THROW(ReadEstimates(nine.string()), std::runtime_error);
}

TEST_F(CliTest, SimulateWritesRoundTrippableTrajectory) {
  CommandOptions opts;
  opts.config_path = WriteConfig(kShortRun).string();
  opts.out_dir = (dir_ / "out").string();
  std::ostringstream log;
  ASSERT_EQ(CmdSimulate(opts, log), 0);
  const RunConfig cfg = LoadRunConfig(opts);
  const Scenario sc = GenerateScenario(cfg);
  EXPECT_EQ(ReadTrajectoryFile((dir_ / "out" / "trajectory.csv").string()), sc.truth);
  EXPECT_EQ(ReadTrajectoryFile((dir_ / "out" / "measured.csv").string()), sc.measured);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "energy.csv"));
  EXPECT_EQ(sc.truth.size(), 2001u);
}

TEST_F(CliTest, IdentifyBothMethods) {
  CommandOptions opts;
  opts.config_path = WriteConfig(kShortRun).string();
  opts.out_dir = dir_.string();
  std::ostringstream log;
  ASSERT_EQ(CmdSimulate(opts, log), 0);
  opts.input_path = (dir_ / "measured.csv").string();
  for (const char* method : {"uas", "opt"}) {
    opts.method = method;
    ASSERT_EQ(CmdIdentify(opts, log), 0);
    const fs::path report = dir_ / (std::string("report_") + method + ".txt");
    ASSERT_TRUE(fs::exists(report));
    EXPECT_NE(ReadAll(report).find(std::string("method=") + method), std::string::npos);
    EXPECT_NO_THROW(ReadEstimates(report.string()));
  }
  EXPECT_TRUE(fs::exists(dir_ / "parameter_trace.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "objective_trace.csv"));

  opts.estimates_path = (dir_ / "report_uas.txt").string();
  opts.input_path = (dir_ / "trajectory.csv").string();
  ASSERT_EQ(CmdValidate(opts, log), 0);
  EXPECT_TRUE(fs::exists(dir_ / "spectrum_reference.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "spectrum_estimate.csv"));
  EXPECT_NE(ReadAll(dir_ / "validation.txt").find("fit_theta1="), std::string::npos);
}

TEST_F(CliTest, ValidateWithTrueParametersFitsPerfectly) {
  CommandOptions opts;
  opts.config_path = WriteConfig(kShortRun).string();
  opts.out_dir = dir_.string();
  std::ostringstream log;
  ASSERT_EQ(CmdSimulate(opts, log), 0);
  std::ofstream(dir_ / "truth.txt") << "5e-4 6e-4 2.5e-4 5e-3 1e-2 6e-4 7e-4 2.5e-4 5e-3 1e-2\n";
  opts.estimates_path = (dir_ / "truth.txt").string();
  opts.input_path = (dir_ / "trajectory.csv").string();
  ASSERT_EQ(CmdValidate(opts, log), 0);
  EXPECT_EQ(ReadAll(dir_ / "validation.txt"), "fit_theta0=100\nfit_theta1=100\n");
}

TEST_F(CliTest, SingleEvaluationBudgetReproducesInitialGuess) {
  CommandOptions opts;
  opts.config_path = WriteConfig(std::string(kShortRun) + "opt_max_evals = 1\n").string();
  const RunConfig cfg = LoadRunConfig(opts);
  const Scenario sc = GenerateScenario(cfg);
  const IdentificationReport opt = RunIdentification(cfg, sc.measured, "opt");
  const IdentificationReport uas = RunIdentification(cfg, sc.measured, "uas");
  EXPECT_EQ(opt.estimates, uas.initial_guess);
}

TEST_F(CliTest, BinaryMissingConfigIsUsageError) {
  EXPECT_NE(Run("simulate"), 0);
  EXPECT_NE(ReadAll(dir_ / "log.txt").find("--config"), std::string::npos);
  EXPECT_NE(Run(""), 0);
}

TEST_F(CliTest, BinaryBadConfigExitsWithTwo) {
  const fs::path cfg = WriteConfig("nonsense = 1\n");
  EXPECT_EQ(Run("simulate --config " + cfg.string() + " --out-dir " + dir_.string()), 2);
  EXPECT_NE(ReadAll(dir_ / "log.txt").find("run.cfg:1"), std::string::npos);
}

TEST_F(CliTest, BinaryNineEstimatesFails) {
  const fs::path cfg = WriteConfig(kShortRun);
  ASSERT_EQ(Run("simulate --config " + cfg.string() + " --out-dir " + dir_.string()), 0);
  std::ofstream(dir_ / "nine.txt") << "1 2 3 4 5 6 7 8 9\n";
  EXPECT_NE(Run("validate --config " + cfg.string() + " --estimates " +
                (dir_ / "nine.txt").string() + " --input " +
                (dir_ / "trajectory.csv").string() + " --out-dir " + dir_.string()),
            0);
  EXPECT_NE(ReadAll(dir_ / "log.txt").find("expected 10 estimates"), std::string::npos);
}

TEST_F(CliTest, BinaryTruncatedCsvNamesLine) {
  const fs::path cfg = WriteConfig(kShortRun);
  std::ofstream(dir_ / "bad.csv") << "t,theta0,theta1,omega0,omega1\n0,0,2,0,0\n0.001,0,2\n";
  EXPECT_EQ(Run("identify --config " + cfg.string() + " --input " +
                (dir_ / "bad.csv").string() + " --out-dir " + dir_.string()),
            2);
  EXPECT_NE(ReadAll(dir_ / "log.txt").find("bad.csv:3"), std::string::npos);
}

TEST_F(CliTest, BinarySeedReproducesOutputs) {
  const fs::path cfg = WriteConfig(kShortRun);
  ASSERT_EQ(Run("compare --config " + cfg.string() + " --seed 7 --out-dir " +
                (dir_ / "a").string()), 0);
  ASSERT_EQ(Run("--seed 7 compare --config " + cfg.string() + " --out-dir " +
                (dir_ / "b").string()), 0);
  ASSERT_EQ(Run("compare --config " + cfg.string() + " --seed 8 --out-dir " +
                (dir_ / "c").string()), 0);
  for (const char* name : {"comparison.txt", "parameter_trace.csv", "objective_trace.csv"}) {
    EXPECT_EQ(ReadAll(dir_ / "a" / name), ReadAll(dir_ / "b" / name)) << name;
  }
  EXPECT_NE(ReadAll(dir_ / "a" / "comparison.txt"), ReadAll(dir_ / "c" / "comparison.txt"));
  EXPECT_NE(ReadAll(dir_ / "a" / "comparison.txt").find("seed=7"), std::string::npos);
}

}  // namespace
}  // namespace furuta
