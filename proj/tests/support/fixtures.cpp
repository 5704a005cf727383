#include "support/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "hsum/rng.hpp"

namespace hsum::testing {

Eigen::VectorXd SeriesParams::stacked() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(cos_amps.size() + sin_amps.size()));
  for (std::size_t i = 0; i < cos_amps.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = cos_amps[i];
  }
  for (std::size_t i = 0; i < sin_amps.size(); ++i) {
    v[static_cast<Eigen::Index>(cos_amps.size() + i)] = sin_amps[i];
  }
  return v;
}

SeriesParams random_series(std::mt19937_64& rng, double f0_hz, int order,
                           double scale) {
  std::uniform_real_distribution<double> magnitude(0.3, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  SeriesParams series;
  series.f0_hz = f0_hz;
  for (int k = 1; k <= order; ++k) {
    const double damp = scale / static_cast<double>(k);
    series.cos_amps.push_back((coin(rng) ? 1.0 : -1.0) * magnitude(rng) * damp);
    series.sin_amps.push_back((coin(rng) ? 1.0 : -1.0) * magnitude(rng) * damp);
  }
  return series;
}

TwoSeriesFixture make_two_series(std::mt19937_64& rng, const GridSpec& acc_grid,
                                 const GridSpec& heart_grid, int motion_order,
                                 int heart_order, std::size_t n_samples,
                                 double sample_rate_hz, double min_gap_hz) {
  std::uniform_int_distribution<std::size_t> motion_pick(0, acc_grid.size() - 1);
  std::uniform_int_distribution<std::size_t> heart_pick(0, heart_grid.size() - 1);

  double motion_f0 = 0.0, heart_f0 = 0.0;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    motion_f0 = acc_grid.frequency(motion_pick(rng));
    heart_f0 = heart_grid.frequency(heart_pick(rng));
    if (!harmonic_collision(heart_f0, heart_order, motion_f0, motion_order,
                            min_gap_hz)) {
      break;
    }
    motion_f0 = 0.0;
  }
  if (motion_f0 == 0.0) {
    throw std::runtime_error("could not sample a non-colliding pair");
  }

  TwoSeriesFixture fixture;
  fixture.motion = random_series(rng, motion_f0, motion_order, 3.0);
  fixture.heart = random_series(rng, heart_f0, heart_order, 1.0);
  std::uniform_real_distribution<double> dc_pick(-1.0, 1.0);
  fixture.dc = dc_pick(rng);

  const SampledSignal motion_series =
      synth_harmonic(motion_f0, fixture.motion.cos_amps,
                     fixture.motion.sin_amps, 0.0, n_samples, sample_rate_hz);
  const SampledSignal heart_series =
      synth_harmonic(heart_f0, fixture.heart.cos_amps, fixture.heart.sin_amps,
                     0.0, n_samples, sample_rate_hz);

  fixture.ppg.sample_rate_hz = sample_rate_hz;
  fixture.ppg.samples.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    fixture.ppg.samples[i] =
        fixture.dc + motion_series.samples[i] + heart_series.samples[i];
  }
  fixture.acc.axes[0] = motion_series;
  fixture.acc.axes[1] = {std::vector<double>(n_samples, 0.0), sample_rate_hz};
  fixture.acc.axes[2] = {std::vector<double>(n_samples, 0.0), sample_rate_hz};
  return fixture;
}

SampledSignal harmonic_chirp(double f_start_hz, double f_end_hz,
                             const std::vector<double>& cos_amps,
                             const std::vector<double>& sin_amps,
                             std::size_t n_samples, double sample_rate_hz) {
  SampledSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n_samples, 0.0);
  double phase = 0.0;  // integrated fundamental phase
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (std::size_t k = 0; k < cos_amps.size(); ++k) {
      const double kp = static_cast<double>(k + 1) * phase;
      out.samples[n] += cos_amps[k] * std::cos(kp) + sin_amps[k] * std::sin(kp);
    }
    const double t = static_cast<double>(n) / static_cast<double>(n_samples);
    const double f = f_start_hz + (f_end_hz - f_start_hz) * t;
    phase += 2.0 * std::numbers::pi * f / sample_rate_hz;
  }
  return out;
}

void add_white_noise(SampledSignal& signal, double rms, std::uint64_t seed) {
  GaussianSampler noise(seed);
  for (double& v : signal.samples) v += rms * noise();
}

double relative_rms_error(const Eigen::VectorXd& estimate,
                          const Eigen::VectorXd& truth) {
  return (estimate - truth).norm() / truth.norm();
}

double relative_rms_error(std::span<const double> estimate,
                          std::span<const double> truth) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    num += d * d;
    den += truth[i] * truth[i];
  }
  return std::sqrt(num / den);
}

}  // namespace hsum::testing
