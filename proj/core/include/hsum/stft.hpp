#pragma once

#include <vector>

#include "hsum/pipeline.hpp"

namespace hsum {

struct StftConfig {
  std::size_t fft_len{2048};
  WindowPlan window{};
  // HR read-out search band; ignored in full_band mode, where the global
  // magnitude peak (including DC) wins.
  double band_lo_hz{0.5};
  double band_hi_hz{3.0};
  bool full_band{false};

  void validate(double sample_rate_hz) const;
};

// Symmetric Hanning window 0.5 - 0.5 cos(2 pi n / (N-1)).
std::vector<double> hanning(std::size_t n);

// One-sided magnitude spectra of Hanning-windowed, zero-padded windows.
struct Spectrogram {
  double sample_rate_hz{0.0};
  std::size_t fft_len{0};
  std::vector<double> bin_hz;                   // fft_len/2 + 1 bins
  std::vector<double> start_time_s;             // one per window
  std::vector<std::vector<double>> magnitudes;  // [window][bin]

  std::size_t n_windows() const { return magnitudes.size(); }
};

Spectrogram spectrogram(const SampledSignal& signal, const StftConfig& cfg);

// Baseline estimator: frequency of the largest-magnitude bin in the search
// band, times 60. Magnitude ties break toward the lower frequency. Windows
// whose spectrum is identically zero over the band get hr_bpm = 0 and the
// no_peak flag.
HrSeries stft_peak_bpm(const SampledSignal& signal, const StftConfig& cfg);

}  // namespace hsum
