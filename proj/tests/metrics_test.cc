#include "furuta/metrics.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "furuta/uas.h"

namespace furuta {
namespace {

constexpr double kPi = std::numbers::pi;

// O(N^2) reference transform.
std::vector<std::complex<double>> NaiveDft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::polar(1.0, -2.0 * kPi * double(k) * double(i) / double(n));
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> RandomSignal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.3, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = dist(rng);
  return x;
}

TEST(GoodnessOfFit, PerfectFit) {
  const std::vector<double> ref{1.0, 3.0, 2.0, 5.0};
  EXPECT_EQ(GoodnessOfFit(ref, ref), 100.0);
}

TEST(GoodnessOfFit, MeanPredictorScoresZero) {
  const std::vector<double> ref{1.0, 3.0, 2.0, 6.0};
  const std::vector<double> est(4, 3.0);
  EXPECT_NEAR(GoodnessOfFit(ref, est), 0.0, 1e-12);
}

TEST(GoodnessOfFit, HandValue) {
  const std::vector<double> ref{0.0, 1.0, 2.0};
  const std::vector<double> est{0.0, 1.0, 1.0};
  EXPECT_NEAR(GoodnessOfFit(ref, est), 50.0, 1e-12);
}

TEST(GoodnessOfFit, Errors) {
  const std::vector<double> three{1.0, 2.0, 3.0};
  const std::vector<double> two{1.0, 2.0};
  const std::vector<double> flat{2.0, 2.0, 2.0};
  EXPECT_THROW(GoodnessOfFit(three, two), std::invalid_argument);
  EXPECT_THROW(GoodnessOfFit(std::vector<double>{1.0}, std::vector<double>{1.0}),
               std::invalid_argument);
  EXPECT_THROW(GoodnessOfFit(flat, three), std::invalid_argument);
}

TEST(GoodnessOfFit, CommonShiftInvariance) {
  const std::vector<double> ref{0.0, 1.0, 4.0, 2.0, 3.0, 5.0, 1.0, 2.0};
  const std::vector<double> est{0.0, 1.5, 3.0, 2.0, 3.5, 4.5, 1.0, 2.5};
  const double shift = 8.0;  // exact in binary, so the shifted data is exact too
  std::vector<double> ref_s = ref, est_s = est;
  for (double& v : ref_s) v += shift;
  for (double& v : est_s) v += shift;
  EXPECT_EQ(GoodnessOfFit(ref, est), GoodnessOfFit(ref_s, est_s));
}

TEST(NormalizedTime, ReferenceValue) {
  EXPECT_NEAR(NormalizedTime(3.43, 35.0, 1000.0), 9.8e-5, 1e-12);
  EXPECT_EQ(NormalizedTime(35000.0, 35.0, 1000.0), 1.0);
  EXPECT_EQ(NormalizedTime(2.0, 10.0, 200.0), 0.5 * NormalizedTime(2.0, 10.0, 100.0));
  EXPECT_THROW(NormalizedTime(1.0, 0.0, 100.0), std::invalid_argument);
}

// Estimates within ~5% of the truth reproduce the truth response.
TEST(PositionFit, NearbyEstimatesFitTruth) {
  PlantModel plant;
  plant.physical.phi = kPi / 6;
  plant.joint0 = {5e-4, 6e-4, 2.5e-4, 5e-3, 1e-2};
  plant.joint1 = {6e-4, 7e-4, 2.5e-4, 5e-3, 1e-2};
  const State ic{0.0, 2 * kPi / 3, 0.0, 0.0};
  const SimConfig sim;
  const Trajectory truth = Simulate(plant, ic, sim);
  plant.joint0 = {4.793e-4, 5.740e-4, 2.424e-4, 4.742e-3, 9.479e-3};
  plant.joint1 = {5.740e-4, 6.688e-4, 2.424e-4, 4.742e-3, 9.479e-3};
  const FitReport fit = PositionFit(truth, Simulate(plant, ic, sim));
  EXPECT_GE(fit.r2_theta0, 95.0);
  EXPECT_GE(fit.r2_theta1, 95.0);
}

TEST(Spectrum, MatchesNaiveDft) {
  const std::vector<double> x = RandomSignal(501, 1);
  const Spectrum s = ComputeSpectrum(x, 0.01);
  const auto ref = NaiveDft(x);
  ASSERT_EQ(s.magnitude.size(), ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    EXPECT_NEAR(s.magnitude[k], std::abs(ref[k]), 1e-9 * (1.0 + std::abs(ref[k])));
    EXPECT_NEAR(s.frequencies[k], k / (501 * 0.01), 1e-12);
    if (std::abs(ref[k]) > 1e-6) {
      const double dphi = std::remainder(s.phase[k] - std::arg(ref[k]), 2 * kPi);
      EXPECT_NEAR(dphi, 0.0, 1e-9);
    }
  }
}

TEST(Spectrum, ParsevalEvenAndOddLengths) {
  for (std::size_t n : {1024u, 1001u, 2u, 3u}) {
    const std::vector<double> x = RandomSignal(n, n);
    const double dt = 1e-3;
    double time_energy = 0.0;
    for (double v : x) time_energy += v * v * dt;
    const double spec_energy = SpectralEnergy(ComputeSpectrum(x, dt));
    EXPECT_NEAR(spec_energy, time_energy, 1e-9 * time_energy) << "n = " << n;
  }
}

TEST(Spectrum, SinusoidPeak) {
  const double dt = 1e-3, f0 = 12.3;
  std::vector<double> x(4000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * kPi * f0 * i * dt);
  const Spectrum s = ComputeSpectrum(x, dt);
  std::size_t peak = 0;
  for (std::size_t k = 1; k < s.magnitude.size(); ++k) {
    if (s.magnitude[k] > s.magnitude[peak]) peak = k;
  }
  const double df = 1.0 / (x.size() * dt);
  EXPECT_LE(std::abs(s.frequencies[peak] - f0), 0.5 * df);
}

TEST(Spectrum, ConstantSignalIsAllDc) {
  const std::vector<double> x(64, -2.5);
  const Spectrum s = ComputeSpectrum(x, 0.5);
  EXPECT_NEAR(s.magnitude[0], 160.0, 1e-12);
  EXPECT_NEAR(s.phase[0], kPi, 1e-15);
  for (std::size_t k = 1; k < s.magnitude.size(); ++k) EXPECT_NEAR(s.magnitude[k], 0.0, 1e-12);
}

TEST(Spectrum, DcPhaseIsZeroOrPi) {
  const Spectrum s = ComputeSpectrum(RandomSignal(300, 9), 0.1);
  EXPECT_TRUE(s.phase[0] == 0.0 || s.phase[0] == kPi);
  EXPECT_TRUE(s.phase.back() == 0.0 || s.phase.back() == kPi);
}

TEST(Spectrum, TrajectoryChannel) {
  Trajectory traj;
  for (int i = 0; i < 100; ++i) {
    traj.times.push_back(0.01 * i);
    traj.states.push_back(State{0.0, std::cos(2 * kPi * 5.0 * 0.01 * i), 0.0, 0.0});
  }
  const Spectrum s = ComputeSpectrum(traj, Channel::kTheta1);
  EXPECT_EQ(s.num_samples, 100u);
  EXPECT_NEAR(s.magnitude[5], 50.0, 1e-9);
  traj.times[50] += 0.003;
  EXPECT_THROW(ComputeSpectrum(traj, Channel::kTheta1), std::invalid_argument);
}

TEST(Spectrum, TooShort) {
  EXPECT_THROW(ComputeSpectrum(std::vector<double>{1.0}, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace furuta
