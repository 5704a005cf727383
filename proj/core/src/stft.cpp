#include "hsum/stft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace hsum {

void StftConfig::validate(double sample_rate_hz) const {
  window.validate(sample_rate_hz);
  if (fft_len < window.window_len_samples(sample_rate_hz)) {
    throw InputError("fft length " + std::to_string(fft_len) +
                     " is shorter than the analysis window (" +
                     std::to_string(window.window_len_samples(sample_rate_hz)) +
                     " samples)");
  }
  if (!full_band) {
    if (!(band_lo_hz >= 0.0) || !(band_lo_hz < band_hi_hz)) {
      throw InputError("empty search band");
    }
  }
}

std::vector<double> hanning(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                static_cast<double>(i) /
                                static_cast<double>(n - 1));
  }
  return w;
}

Spectrogram spectrogram(const SampledSignal& signal, const StftConfig& cfg) {
  signal.validate();
  cfg.validate(signal.sample_rate_hz);
  const auto windows = segment(signal, cfg.window);
  const std::vector<double> taper = hanning(windows[0].size());

  Spectrogram out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.fft_len = cfg.fft_len;
  const std::size_t n_bins = cfg.fft_len / 2 + 1;
  out.bin_hz.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    out.bin_hz[k] = static_cast<double>(k) * signal.sample_rate_hz /
                    static_cast<double>(cfg.fft_len);
  }

  Eigen::FFT<double> fft;
  std::vector<double> padded(cfg.fft_len);
  std::vector<std::complex<double>> spectrum;
  out.magnitudes.reserve(windows.size());
  out.start_time_s.reserve(windows.size());
  for (const auto& window : windows) {
    std::fill(padded.begin(), padded.end(), 0.0);
    for (std::size_t n = 0; n < window.size(); ++n) {
      padded[n] = taper[n] * window.samples[n];
    }
    fft.fwd(spectrum, padded);
    std::vector<double> mags(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) mags[k] = std::abs(spectrum[k]);
    out.magnitudes.push_back(std::move(mags));
    out.start_time_s.push_back(window.start_time_s());
  }
  return out;
}

HrSeries stft_peak_bpm(const SampledSignal& signal, const StftConfig& cfg) {
  const Spectrogram spec = spectrogram(signal, cfg);

  // Band limits in bins; in full-band mode everything is searched.
  std::size_t k_lo = 0;
  std::size_t k_hi = spec.bin_hz.size() - 1;
  if (!cfg.full_band) {
    const double bin_width = spec.bin_hz[1];
    k_lo = static_cast<std::size_t>(std::ceil(cfg.band_lo_hz / bin_width - 1e-9));
    k_hi = static_cast<std::size_t>(std::floor(cfg.band_hi_hz / bin_width + 1e-9));
    k_hi = std::min(k_hi, spec.bin_hz.size() - 1);
    if (k_lo > k_hi) throw InputError("search band holds no FFT bin");
  }

  HrSeries series;
  series.entries.resize(spec.n_windows());
  for (std::size_t i = 0; i < spec.n_windows(); ++i) {
    const auto& mags = spec.magnitudes[i];
    std::size_t peak = k_lo;
    for (std::size_t k = k_lo + 1; k <= k_hi; ++k) {
      if (mags[k] > mags[peak]) peak = k;  // ties keep the lower bin
    }
    HrEntry& entry = series.entries[i];
    entry.window_index = i;
    entry.start_time_s = spec.start_time_s[i];
    if (mags[peak] == 0.0) {
      entry.hr_bpm = 0.0;
      entry.no_peak = true;
    } else {
      entry.hr_bpm = 60.0 * spec.bin_hz[peak];
    }
  }
  return series;
}

}  // namespace hsum
