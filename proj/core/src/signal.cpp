#include "hsum/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hsum {

void SampledSignal::validate() const {
  if (!(sample_rate_hz > 0.0)) {
    throw InputError("sample rate must be positive, got " +
                     std::to_string(sample_rate_hz));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw InputError("non-finite sample at index " + std::to_string(i));
    }
  }
}

double WindowView::energy() const {
  double e = 0.0;
  for (const double v : samples) e += v * v;
  return e;
}

std::size_t WindowPlan::window_len_samples(double sample_rate_hz) const {
  return static_cast<std::size_t>(std::llround(window_len_s * sample_rate_hz));
}

std::size_t WindowPlan::hop_samples(double sample_rate_hz) const {
  return static_cast<std::size_t>(std::llround(hop_s * sample_rate_hz));
}

void WindowPlan::validate(double sample_rate_hz) const {
  if (!(window_len_s > 0.0) || !(hop_s > 0.0)) {
    throw InputError("window length and hop must be positive");
  }
  if (hop_s > window_len_s) {
    throw InputError("hop (" + std::to_string(hop_s) +
                     " s) must not exceed the window length (" +
                     std::to_string(window_len_s) + " s)");
  }
  if (window_len_samples(sample_rate_hz) < 2 || hop_samples(sample_rate_hz) < 1) {
    throw InputError("window plan collapses to fewer than 2 samples at " +
                     std::to_string(sample_rate_hz) + " Hz");
  }
}

void MultiAxisSignal::validate() const {
  for (const auto& axis : axes) axis.validate();
  for (int i = 1; i < 3; ++i) {
    if (axes[i].size() != axes[0].size() ||
        axes[i].sample_rate_hz != axes[0].sample_rate_hz) {
      throw InputError("acceleration axes must share length and sample rate");
    }
  }
}

std::size_t window_count(std::size_t n_samples, std::size_t window_len,
                         std::size_t hop) {
  if (n_samples < window_len) return 0;
  return (n_samples - window_len) / hop + 1;
}

std::vector<WindowView> segment(std::span<const double> samples,
                                double sample_rate_hz,
                                const WindowPlan& plan) {
  plan.validate(sample_rate_hz);
  const std::size_t w = plan.window_len_samples(sample_rate_hz);
  const std::size_t h = plan.hop_samples(sample_rate_hz);
  if (samples.size() < w) {
    throw InputError("signal too short: " + std::to_string(samples.size()) +
                     " samples, need at least " + std::to_string(w) +
                     " for one window");
  }
  const std::size_t count = window_count(samples.size(), w, h);
  std::vector<WindowView> windows;
  windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * h;
    windows.push_back(WindowView{samples.subspan(start, w), start, sample_rate_hz});
  }
  return windows;
}

std::vector<WindowView> segment(const SampledSignal& signal,
                                const WindowPlan& plan) {
  return segment(std::span<const double>(signal.samples),
                 signal.sample_rate_hz, plan);
}

SampledSignal synth_harmonic(double f0_hz, std::span<const double> cos_amps,
                             std::span<const double> sin_amps, double dc,
                             std::size_t n_samples, double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw InputError("sample rate must be positive");
  if (f0_hz < 0.0) throw InputError("fundamental frequency must be >= 0");
  if (cos_amps.size() != sin_amps.size()) {
    throw InputError("cosine and sine amplitude vectors must have equal length");
  }
  const auto order = static_cast<double>(cos_amps.size());
  if (order * f0_hz >= sample_rate_hz / 2.0) {
    throw InputError("harmonic " + std::to_string(cos_amps.size()) + " at " +
                     std::to_string(order * f0_hz) +
                     " Hz is at or above Nyquist");
  }

  SampledSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.assign(n_samples, dc);
  const double omega = 2.0 * std::numbers::pi * f0_hz / sample_rate_hz;
  for (std::size_t n = 0; n < n_samples; ++n) {
    // Fundamental phase from libm, higher harmonics by complex rotation.
    const double c1 = std::cos(omega * static_cast<double>(n));
    const double s1 = std::sin(omega * static_cast<double>(n));
    double ck = c1, sk = s1;
    double acc = 0.0;
    for (std::size_t k = 0; k < cos_amps.size(); ++k) {
      acc += cos_amps[k] * ck + sin_amps[k] * sk;
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    out.samples[n] += acc;
  }
  return out;
}

void mean_remove(std::span<double> x) {
  if (x.empty()) return;
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

std::vector<double> mean_removed(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  mean_remove(out);
  return out;
}

}  // namespace hsum
