#include "hsum/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hsum {

void PipelineConfig::validate(double sample_rate_hz) const {
  window.validate(sample_rate_hz);
  acc_grid.validate();
  heart_grid.validate();
  if (motion_order < 1 || heart_order < 1) {
    throw InputError("model orders must be >= 1");
  }
  if (ppg_channel != 1 && ppg_channel != 2) {
    throw InputError("ppg channel must be 1 or 2");
  }
  const std::size_t w = window.window_len_samples(sample_rate_hz);
  const int max_order = std::max(motion_order, heart_order);
  const std::size_t needed = 2u * (2u * static_cast<std::size_t>(max_order) + 1u);
  if (w < needed) {
    throw InputError("window of " + std::to_string(w) +
                     " samples is too short for order " +
                     std::to_string(max_order) + " (need >= " +
                     std::to_string(needed) + ")");
  }
  // Nyquist for the top of both grids.
  DesignSpec{acc_grid.f_max_hz, motion_order, w, sample_rate_hz, true}
      .validate();
  JointDesignSpec{acc_grid.f_max_hz, motion_order, heart_grid.f_max_hz,
                  heart_order, w, sample_rate_hz}
      .validate();
}

std::vector<double> HrSeries::bpm() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.hr_bpm);
  return out;
}

namespace {

double relative_error_energy(double se_p, double acc_energy) {
  if (acc_energy > 0.0) return se_p / acc_energy;
  return se_p == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

WindowView scratch_view(const WindowView& window, std::vector<double>& scratch) {
  scratch.assign(window.samples.begin(), window.samples.end());
  mean_remove(scratch);
  return WindowView{scratch, window.start_index, window.sample_rate_hz};
}

}  // namespace

HrSeries estimate_hr(const SampledSignal& ppg, const MultiAxisSignal& acc,
                     const PipelineConfig& cfg) {
  ppg.validate();
  acc.validate();
  if (ppg.size() != acc.size() || ppg.sample_rate_hz != acc.sample_rate_hz()) {
    throw InputError("PPG and accelerometer must share length and rate (" +
                     std::to_string(ppg.size()) + " vs " +
                     std::to_string(acc.size()) + " samples)");
  }
  cfg.validate(ppg.sample_rate_hz);

  const auto ppg_windows = segment(ppg, cfg.window);
  const std::array<std::vector<WindowView>, 3> acc_windows = {
      segment(acc.axes[0], cfg.window), segment(acc.axes[1], cfg.window),
      segment(acc.axes[2], cfg.window)};

  HrSeries series;
  series.entries.resize(ppg_windows.size());

  // Serial over windows; the grid sweeps inside the fits are parallel.
  std::array<std::vector<double>, 3> acc_scratch;
  std::vector<double> ppg_scratch;
  for (std::size_t i = 0; i < ppg_windows.size(); ++i) {
    MultiAxisWindow acc_window{
        {acc_windows[0][i], acc_windows[1][i], acc_windows[2][i]}};
    WindowView ppg_window = ppg_windows[i];
    if (cfg.mean_remove) {
      for (int a = 0; a < 3; ++a) {
        acc_window.axes[static_cast<std::size_t>(a)] = scratch_view(
            acc_window.axes[static_cast<std::size_t>(a)], acc_scratch[static_cast<std::size_t>(a)]);
      }
      ppg_window = scratch_view(ppg_window, ppg_scratch);
    }

    const HsumFit motion = fit_multiaxis(acc_window, cfg.acc_grid,
                                         cfg.motion_order, cfg.combine);
    const JointFit joint = fit_heart_fundamental(
        ppg_window, motion.f0_hz, cfg.heart_grid, cfg.motion_order,
        cfg.heart_order, cfg.joint);

    HrEntry& entry = series.entries[i];
    entry.window_index = i;
    entry.start_time_s = ppg_windows[i].start_time_s();
    entry.hr_bpm = joint.hr_bpm();
    entry.motion_f0_hz = motion.f0_hz;
    entry.se_p = joint.se_p;
    entry.relative_error_energy =
        relative_error_energy(joint.se_p, motion.window_energy);
    entry.collision = joint.collision;
    entry.weak_heart = joint.weak_heart;
  }

  return cfg.median_filter ? median3(series) : series;
}

HrSeries median3(const HrSeries& series) {
  if (series.entries.empty()) throw InputError("median3 on an empty series");
  HrSeries out = series;
  for (std::size_t i = 1; i + 1 < series.entries.size(); ++i) {
    const double a = series.entries[i - 1].hr_bpm;
    const double b = series.entries[i].hr_bpm;
    const double c = series.entries[i + 1].hr_bpm;
    out.entries[i].hr_bpm = std::max(std::min(a, b), std::min(std::max(a, b), c));
  }
  return out;
}

}  // namespace hsum
