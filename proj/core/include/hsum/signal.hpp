#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hsum/common.hpp"

namespace hsum {

// Uniformly sampled real-valued series.
struct SampledSignal {
  std::vector<double> samples;
  double sample_rate_hz{125.0};

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }

  // Throws InputError if the rate is not positive or any sample is non-finite.
  void validate() const;
};

// Borrowed view of one analysis window. Valid only while the underlying
// signal is alive.
struct WindowView {
  std::span<const double> samples;
  std::size_t start_index{0};
  double sample_rate_hz{125.0};

  std::size_t size() const { return samples.size(); }
  double start_time_s() const {
    return static_cast<double>(start_index) / sample_rate_hz;
  }
  // Sum of squared samples.
  double energy() const;
};

// Sliding-window layout; the defaults give 8 s windows every 2 s
// (6 s overlap), 1000 and 250 samples at 125 Hz.
struct WindowPlan {
  double window_len_s{8.0};
  double hop_s{2.0};

  std::size_t window_len_samples(double sample_rate_hz) const;
  std::size_t hop_samples(double sample_rate_hz) const;
  void validate(double sample_rate_hz) const;
};

// Three-axis acceleration; all axes must share length and rate.
struct MultiAxisSignal {
  std::array<SampledSignal, 3> axes;

  std::size_t size() const { return axes[0].size(); }
  double sample_rate_hz() const { return axes[0].sample_rate_hz; }
  void validate() const;
};

// Number of complete windows: floor((n - window_len) / hop) + 1.
std::size_t window_count(std::size_t n_samples, std::size_t window_len,
                         std::size_t hop);

// Cuts the signal into complete windows starting at 0, hop, 2*hop, ...
// Trailing samples that cannot fill a window are dropped. Throws
// InputError when not even one window fits.
std::vector<WindowView> segment(const SampledSignal& signal,
                                const WindowPlan& plan);
std::vector<WindowView> segment(std::span<const double> samples,
                                double sample_rate_hz, const WindowPlan& plan);

// Generates dc + sum_k a_k cos(2 pi k n f0/fs) + sum_k b_k sin(2 pi k n f0/fs)
// for n in [0, n_samples). cos_amps and sin_amps must have equal length M;
// requires M*f0 < fs/2 (all harmonics below Nyquist).
SampledSignal synth_harmonic(double f0_hz, std::span<const double> cos_amps,
                             std::span<const double> sin_amps, double dc,
                             std::size_t n_samples, double sample_rate_hz);

// Subtracts the arithmetic mean in place.
void mean_remove(std::span<double> x);

// Copy of x with the arithmetic mean subtracted.
std::vector<double> mean_removed(std::span<const double> x);

}  // namespace hsum
