#include "furuta/metrics.h"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fftw3.h>

namespace furuta {

double GoodnessOfFit(std::span<const double> ref, std::span<const double> est) {
  if (ref.size() != est.size()) {
    throw std::invalid_argument("goodness of fit: length mismatch");
  }
  if (ref.size() < 2) {
    throw std::invalid_argument("goodness of fit: need at least two samples");
  }
  const double mean =
      std::accumulate(ref.begin(), ref.end(), 0.0) / static_cast<double>(ref.size());
  double residual = 0.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    residual += (est[i] - ref[i]) * (est[i] - ref[i]);
    spread += (ref[i] - mean) * (ref[i] - mean);
  }
  if (spread == 0.0) {
    throw std::invalid_argument("goodness of fit: constant reference");
  }
  return 100.0 * (1.0 - residual / spread);
}

std::vector<double> ChannelValues(const Trajectory& traj, Channel channel) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const State& s : traj.states) {
    switch (channel) {
      case Channel::kTheta0: out.push_back(s.theta0); break;
      case Channel::kTheta1: out.push_back(s.theta1); break;
      case Channel::kOmega0: out.push_back(s.omega0); break;
      case Channel::kOmega1: out.push_back(s.omega1); break;
    }
  }
  return out;
}

FitReport PositionFit(const Trajectory& ref, const Trajectory& est) {
  FitReport fit;
  fit.r2_theta0 = GoodnessOfFit(ChannelValues(ref, Channel::kTheta0),
                                ChannelValues(est, Channel::kTheta0));
  fit.r2_theta1 = GoodnessOfFit(ChannelValues(ref, Channel::kTheta1),
                                ChannelValues(est, Channel::kTheta1));
  return fit;
}

double NormalizedTime(double computation_time, double experiment_time,
                      double sampling_frequency) {
  if (!(computation_time >= 0.0 && experiment_time > 0.0 && sampling_frequency > 0.0)) {
    throw std::invalid_argument("normalized time: times and frequency must be positive");
  }
  return computation_time / (experiment_time * sampling_frequency);
}

Spectrum ComputeSpectrum(std::span<const double> samples, double dt) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("spectrum: need at least two samples");
  if (!(dt > 0.0)) throw std::invalid_argument("spectrum: dt must be > 0");

  const std::size_t bins = n / 2 + 1;
  std::vector<double> input(samples.begin(), samples.end());
  std::vector<std::complex<double>> output(bins);
  {
    // Only fftw_execute is thread-safe; planning goes through one lock.
    static std::mutex planner;
    std::lock_guard<std::mutex> lock(planner);
    fftw_plan plan = fftw_plan_dft_r2c_1d(
        static_cast<int>(n), input.data(),
        reinterpret_cast<fftw_complex*>(output.data()), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  Spectrum spec;
  spec.num_samples = n;
  spec.dt = dt;
  spec.frequencies.resize(bins);
  spec.magnitude.resize(bins);
  spec.phase.resize(bins);
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < bins; ++k) {
    std::complex<double> x = output[k];
    // DC (and Nyquist for even n) are real for real input.
    if (k == 0 || 2 * k == n) x.imag(0.0);
    spec.frequencies[k] = static_cast<double>(k) * df;
    spec.magnitude[k] = std::abs(x);
    spec.phase[k] = x.real() < 0.0 && x.imag() == 0.0 ? std::numbers::pi
                                                      : std::arg(x);
  }
  return spec;
}

Spectrum ComputeSpectrum(const Trajectory& traj, Channel channel) {
  traj.Validate();
  if (traj.size() < 2) throw std::invalid_argument("spectrum: need at least two samples");
  if (!traj.IsUniform()) {
    throw std::invalid_argument("spectrum: trajectory is not uniformly sampled");
  }
  const std::vector<double> values = ChannelValues(traj, channel);
  return ComputeSpectrum(values, traj.dt());
}

double SpectralEnergy(const Spectrum& spectrum) {
  const std::size_t n = spectrum.num_samples;
  double sum = 0.0;
  for (std::size_t k = 0; k < spectrum.magnitude.size(); ++k) {
    const double m2 = spectrum.magnitude[k] * spectrum.magnitude[k];
    const bool unpaired = k == 0 || 2 * k == n;
    sum += unpaired ? m2 : 2.0 * m2;
  }
  return sum * spectrum.dt / static_cast<double>(n);
}

}  // namespace furuta
