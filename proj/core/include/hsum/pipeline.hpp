#pragma once

#include <vector>

#include "hsum/joint_model.hpp"

namespace hsum {

struct PipelineConfig {
  WindowPlan window{};
  GridSpec acc_grid = default_motion_grid();
  GridSpec heart_grid = default_heart_grid();
  int motion_order{kDefaultMotionOrder};
  int heart_order{kDefaultHeartOrder};
  AxisCombine combine{};
  // 3-point median post-filter; needs the next window, so offline only.
  bool median_filter{false};
  int ppg_channel{2};  // 1-based recording channel
  bool mean_remove{false};
  JointFitOptions joint{};

  void validate(double sample_rate_hz) const;
};

struct HrEntry {
  std::size_t window_index{0};
  double start_time_s{0.0};
  double hr_bpm{0.0};
  double motion_f0_hz{0.0};
  double se_p{0.0};
  // se_p divided by the energy of the accelerometer window picked by the
  // axis-combine mode.
  double relative_error_energy{0.0};
  bool collision{false};
  bool weak_heart{false};
  bool no_peak{false};  // STFT baseline only: all-zero spectrum in the band
};

struct HrSeries {
  std::vector<HrEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<double> bpm() const;
};

// Per-window estimation: motion fundamental from the accelerometer window,
// heart fundamental from the joint PPG fit, 60 * f_heart as BPM.
// Deterministic for identical inputs and config, for any worker count.
HrSeries estimate_hr(const SampledSignal& ppg, const MultiAxisSignal& acc,
                     const PipelineConfig& cfg);

// 3-point median across neighbouring windows; endpoints pass through and
// only hr_bpm is touched.
HrSeries median3(const HrSeries& series);

}  // namespace hsum
