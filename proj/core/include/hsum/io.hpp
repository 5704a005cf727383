#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hsum/metrics.hpp"
#include "hsum/reference_table.hpp"
#include "hsum/stft.hpp"

namespace hsum {

// One recording as stored on disk: CSV with header
//   t,ppg1,ppg2,acc_x,acc_y,acc_z
// where `t` (seconds, constant spacing) and a trailing `ecg` column are
// optional; `ecg` is ignored on read.
struct Recording {
  SampledSignal ppg1;
  SampledSignal ppg2;
  MultiAxisSignal acc;

  double sample_rate_hz() const { return ppg1.sample_rate_hz; }
  const SampledSignal& ppg_channel(int one_based) const;
  void validate() const;
};

// sample_rate_hz is required when the file has no `t` column; when both are
// present they must agree to 1e-6 relative.
Recording read_recording(const std::filesystem::path& path,
                         std::optional<double> sample_rate_hz = {});
void write_recording(const std::filesystem::path& path,
                     const Recording& recording);

// Ground truth: CSV `window_index,bpm` with indices 0,1,2,...
std::vector<double> read_truth(const std::filesystem::path& path);
void write_truth(const std::filesystem::path& path,
                 std::span<const double> bpm);

// Estimates: CSV
//   window_index,start_s,hr_bpm,f_oa_hz,se_p,rel_err_energy,collision
// Numbers are written with 17 significant digits so a read-back is
// bit-exact.
void write_hr_csv(const std::filesystem::path& path, const HrSeries& series);
HrSeries read_hr_csv(const std::filesystem::path& path);

// Long-format spectrogram export: window_index,bin_hz,magnitude.
void write_spectrogram_csv(const std::filesystem::path& path,
                           const Spectrogram& spec);

// Evaluation against ground truth, pooled over one or more recordings.
struct EvalSummary {
  EvalReport pooled;
  std::vector<std::string> names;  // one per recording
  std::vector<double> per_recording_mae;
  std::vector<double> per_recording_std;
};

std::string render_report_text(const EvalSummary& summary);
void write_report_json(const std::filesystem::path& path,
                       const EvalSummary& summary);
void write_report_text(const std::filesystem::path& path,
                       const EvalSummary& summary);
// (mean, diff) pairs for agreement plots: CSV `mean_bpm,diff_bpm`.
void write_ba_pairs_csv(const std::filesystem::path& path,
                        const EvalReport& report);

// Locale-independent, 17 significant digits; round-trips exactly through
// parse_double.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace hsum
