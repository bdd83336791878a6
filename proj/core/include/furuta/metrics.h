#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "furuta/sim.h"

namespace furuta {

// 100 * (1 - sum (est - ref)^2 / sum (ref - mean(ref))^2). 100 is a perfect
// fit; values can be negative. Throws std::invalid_argument on length
// mismatch, fewer than two samples or a constant reference.
double GoodnessOfFit(std::span<const double> ref, std::span<const double> est);

struct FitReport {
  double r2_theta0 = 0.0;
  double r2_theta1 = 0.0;
  double computation_time = 0.0;
  double normalized_time = 0.0;
};

// Fit on the position channels.
FitReport PositionFit(const Trajectory& ref, const Trajectory& est);

// computation time / (experiment time * sampling frequency).
double NormalizedTime(double computation_time, double experiment_time,
                      double sampling_frequency);

enum class Channel { kTheta0 = 0, kTheta1 = 1, kOmega0 = 2, kOmega1 = 3 };

std::vector<double> ChannelValues(const Trajectory& traj, Channel channel);

// One-sided DFT of the full record, DC through Nyquist, no window and no
// padding. magnitude[k] = |X_k| with X_k = sum_n x_n exp(-2 pi i k n / N).
struct Spectrum {
  std::vector<double> frequencies;  // [Hz]
  std::vector<double> magnitude;
  std::vector<double> phase;        // [rad]
  std::size_t num_samples = 0;
  double dt = 0.0;
};

// Throws std::invalid_argument for fewer than two samples or non-uniform
// sampling.
Spectrum ComputeSpectrum(const Trajectory& traj, Channel channel);
Spectrum ComputeSpectrum(std::span<const double> samples, double dt);

// Energy sum |x_n|^2 dt recovered from a one-sided spectrum (Parseval).
double SpectralEnergy(const Spectrum& spectrum);

}  // namespace furuta
