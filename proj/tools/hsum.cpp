// Command-line front end: estimate, evaluate, synth, baseline, spectrogram.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hsum/io.hpp"
#include "hsum/rng.hpp"

namespace {

using hsum::InputError;

hsum::GridSpec parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw InputError("grid must be min:max:step, got \"" + text + "\"");
  }
  hsum::GridSpec grid{hsum::parse_double(text.substr(0, a)),
                      hsum::parse_double(text.substr(a + 1, b - a - 1)),
                      hsum::parse_double(text.substr(b + 1))};
  grid.validate();
  return grid;
}

std::pair<double, double> parse_band(const std::string& text) {
  const auto a = text.find(':');
  if (a == std::string::npos) {
    throw InputError("band must be lo:hi, got \"" + text + "\"");
  }
  return {hsum::parse_double(text.substr(0, a)),
          hsum::parse_double(text.substr(a + 1))};
}

bool parse_on_off(const std::string& text, const char* flag) {
  if (text == "on") return true;
  if (text == "off") return false;
  throw InputError(std::string(flag) + " must be on or off");
}

// f0,a_1,..,a_M,b_1,..,b_M
struct SeriesSpec {
  double f0_hz{0.0};
  std::vector<double> cos_amps;
  std::vector<double> sin_amps;
};

SeriesSpec parse_series(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    values.push_back(hsum::parse_double(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.size() < 3 || values.size() % 2 == 0) {
    throw InputError("series must be f0,a1,..,aM,b1,..,bM (odd count >= 3)");
  }
  SeriesSpec series;
  series.f0_hz = values[0];
  const std::size_t order = (values.size() - 1) / 2;
  series.cos_amps.assign(values.begin() + 1, values.begin() + 1 + static_cast<long>(order));
  series.sin_amps.assign(values.begin() + 1 + static_cast<long>(order), values.end());
  return series;
}

struct InputArgs {
  std::string path;
  std::optional<double> fs;
  int channel{2};
};

bool has_time_column(const std::string& path) {
  std::ifstream probe(path);
  std::string header;
  if (!probe || !std::getline(probe, header)) return false;
  std::size_t start = 0;
  while (start <= header.size()) {
    auto comma = header.find(',', start);
    if (comma == std::string::npos) comma = header.size();
    std::string name = header.substr(start, comma - start);
    while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) {
      name.pop_back();
    }
    if (name == "t") return true;
    start = comma + 1;
  }
  return false;
}

hsum::Recording load_recording(const InputArgs& in) {
  // --fs is only needed when the file has no time column; 125 Hz is the
  // documented default for such files.
  std::optional<double> rate = in.fs;
  if (!rate && !has_time_column(in.path)) rate = 125.0;
  return hsum::read_recording(in.path, rate);
}

int run_estimate(const InputArgs& in, const hsum::PipelineConfig& cfg,
                 const std::string& out_path) {
  const hsum::Recording rec = load_recording(in);
  const hsum::HrSeries series =
      hsum::estimate_hr(rec.ppg_channel(cfg.ppg_channel), rec.acc, cfg);
  hsum::write_hr_csv(out_path, series);
  std::cout << "estimated " << series.size() << " windows from " << in.path
            << " -> " << out_path << "\n";
  return 0;
}

int run_evaluate(const std::vector<std::string>& estimate_paths,
                 const std::vector<std::string>& truth_paths,
                 const std::string& report_path,
                 const std::string& ba_pairs_path) {
  if (estimate_paths.size() != truth_paths.size() || estimate_paths.empty()) {
    throw InputError("need one --truth per --estimates file");
  }

  hsum::EvalSummary summary;
  std::vector<double> pooled_est, pooled_truth;
  for (std::size_t i = 0; i < estimate_paths.size(); ++i) {
    const hsum::HrSeries series = hsum::read_hr_csv(estimate_paths[i]);
    const std::vector<double> truth = hsum::read_truth(truth_paths[i]);
    if (series.size() != truth.size()) {
      throw InputError("window count mismatch for " + estimate_paths[i] +
                       ": " + std::to_string(series.size()) +
                       " estimates vs " + std::to_string(truth.size()) +
                       " truth values");
    }
    const std::vector<double> bpm = series.bpm();
    pooled_est.insert(pooled_est.end(), bpm.begin(), bpm.end());
    pooled_truth.insert(pooled_truth.end(), truth.begin(), truth.end());
    if (estimate_paths.size() > 1) {
      const hsum::EvalReport one = hsum::evaluate(bpm, truth);
      summary.names.push_back(
          std::filesystem::path(estimate_paths[i]).stem().string());
      summary.per_recording_mae.push_back(one.mae_bpm);
      summary.per_recording_std.push_back(one.std_abs_err_bpm);
    }
  }
  summary.pooled = hsum::evaluate(pooled_est, pooled_truth);

  if (report_path.empty()) {
    std::cout << hsum::render_report_text(summary);
  } else if (report_path.ends_with(".json")) {
    hsum::write_report_json(report_path, summary);
  } else if (report_path.ends_with(".txt")) {
    hsum::write_report_text(report_path, summary);
  } else {
    throw InputError("--report must end in .json or .txt");
  }
  if (!ba_pairs_path.empty()) {
    hsum::write_ba_pairs_csv(ba_pairs_path, summary.pooled);
  }
  std::cout << "evaluated " << summary.pooled.n << " windows, mae "
            << hsum::format_double(summary.pooled.mae_bpm) << " bpm\n";
  return 0;
}

int run_synth(const std::optional<SeriesSpec>& motion,
              const std::optional<SeriesSpec>& heart, double duration_s,
              double fs, double noise_rms, std::uint64_t seed,
              const std::string& out_path) {
  if (!(duration_s > 0.0)) throw InputError("duration must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * fs));

  std::vector<double> zero(n, 0.0);
  const hsum::SampledSignal silence{zero, fs};
  const hsum::SampledSignal motion_series =
      motion ? hsum::synth_harmonic(motion->f0_hz, motion->cos_amps,
                                    motion->sin_amps, 0.0, n, fs)
             : silence;
  const hsum::SampledSignal heart_series =
      heart ? hsum::synth_harmonic(heart->f0_hz, heart->cos_amps,
                                   heart->sin_amps, 0.0, n, fs)
            : silence;

  // PPG carries both series (heart rhythm plus motion artifact); the
  // accelerometer sees the motion on axis x only.
  hsum::Recording rec;
  rec.ppg1 = {std::vector<double>(n), fs};
  rec.ppg2 = {std::vector<double>(n), fs};
  rec.acc.axes[0] = {std::vector<double>(n), fs};
  rec.acc.axes[1] = {std::vector<double>(n), fs};
  rec.acc.axes[2] = {std::vector<double>(n), fs};

  hsum::GaussianSampler noise(seed);
  auto draw = [&]() { return noise_rms > 0.0 ? noise_rms * noise() : 0.0; };
  for (std::size_t i = 0; i < n; ++i) {
    const double ppg_clean = motion_series.samples[i] + heart_series.samples[i];
    rec.ppg1.samples[i] = ppg_clean + draw();
    rec.ppg2.samples[i] = ppg_clean + draw();
    rec.acc.axes[0].samples[i] = motion_series.samples[i] + draw();
    rec.acc.axes[1].samples[i] = draw();
    rec.acc.axes[2].samples[i] = draw();
  }

  hsum::write_recording(out_path, rec);
  std::cout << "wrote " << n << " samples (" << hsum::format_double(duration_s)
            << " s at " << hsum::format_double(fs) << " Hz) -> " << out_path
            << "\n";
  return 0;
}

int run_baseline(const InputArgs& in, const hsum::StftConfig& cfg,
                 bool median, const std::string& out_path) {
  const hsum::Recording rec = load_recording(in);
  hsum::HrSeries series = hsum::stft_peak_bpm(rec.ppg_channel(in.channel), cfg);
  if (median) series = hsum::median3(series);
  hsum::write_hr_csv(out_path, series);
  std::cout << "baseline over " << series.size() << " windows from " << in.path
            << " -> " << out_path << "\n";
  return 0;
}

int run_spectrogram(const InputArgs& in, const hsum::StftConfig& cfg,
                    const std::string& which, const std::string& axis,
                    const std::string& out_path) {
  const hsum::Recording rec = load_recording(in);
  hsum::SampledSignal selected;
  if (which == "ppg") {
    selected = rec.ppg_channel(in.channel);
  } else if (which == "acc") {
    if (axis == "x" || axis == "y" || axis == "z") {
      selected = rec.acc.axes[static_cast<std::size_t>(axis[0] - 'x')];
    } else if (axis == "mag") {
      selected.sample_rate_hz = rec.sample_rate_hz();
      selected.samples.resize(rec.acc.size());
      for (std::size_t i = 0; i < selected.samples.size(); ++i) {
        double ss = 0.0;
        for (const auto& ax : rec.acc.axes) ss += ax.samples[i] * ax.samples[i];
        selected.samples[i] = std::sqrt(ss);
      }
    } else {
      throw InputError("--axis must be x, y, z, or mag");
    }
  } else {
    throw InputError("--signal must be acc or ppg");
  }
  const hsum::Spectrogram spec = hsum::spectrogram(selected, cfg);
  hsum::write_spectrogram_csv(out_path, spec);
  std::cout << "spectrogram: " << spec.n_windows() << " windows x "
            << spec.bin_hz.size() << " bins -> " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Heart-rate estimation from motion-corrupted wrist PPG by fitting "
      "harmonic-sum models to the accelerometer and PPG signals"};
  app.require_subcommand(1);

  // shared input options
  InputArgs in;
  double fs_flag = 0.0;
  auto add_input = [&](CLI::App* cmd, bool with_channel) {
    cmd->add_option("--input", in.path, "Recording CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--fs", fs_flag,
                    "Sample rate in Hz for files without a `t` column");
    if (with_channel) {
      cmd->add_option("--channel", in.channel, "PPG channel (1 or 2)")
          ->check(CLI::Range(1, 2));
    }
  };

  hsum::PipelineConfig cfg;
  std::string acc_grid_text = "1:3:0.01";
  std::string hr_grid_text = "0.5:3:0.01";
  std::string combine_text = "best-axis";
  std::string median_text = "off";
  std::string out_path = "hr.csv";
  unsigned threads = 0;

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Per-window heart rate from a PPG + accelerometer recording");
  add_input(estimate, true);
  estimate->add_option("--window", cfg.window.window_len_s, "Window length (s)");
  estimate->add_option("--hop", cfg.window.hop_s, "Window hop (s)");
  estimate->add_option("--ma", cfg.motion_order, "Motion model order");
  estimate->add_option("--mh", cfg.heart_order, "Heart model order");
  estimate->add_option("--acc-grid", acc_grid_text, "Motion grid min:max:step (Hz)");
  estimate->add_option("--hr-grid", hr_grid_text, "Heart grid min:max:step (Hz)");
  estimate->add_option("--combine", combine_text,
                       "Accelerometer axis handling: best-axis, l2, axis:0..2");
  estimate->add_option("--median", median_text, "3-point median filter: on/off");
  estimate->add_flag("--mean-remove", cfg.mean_remove,
                     "Subtract each window's mean before fitting");
  estimate->add_option("--threads", threads, "Worker threads (0 = auto)");
  estimate->add_option("--out", out_path, "Output CSV");

  std::vector<std::string> estimate_paths, truth_paths;
  std::string report_path, ba_pairs_path;
  bool pooled = false;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Compare estimates against ground truth");
  evaluate->add_option("--estimates", estimate_paths, "Estimate CSVs")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--truth", truth_paths, "Ground-truth CSVs")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--report", report_path, "Report file (.json or .txt)");
  evaluate->add_option("--ba-pairs", ba_pairs_path,
                       "Write Bland-Altman (mean, diff) pairs CSV");
  evaluate->add_flag("--pooled", pooled,
                     "Pool all recordings into one corpus (default behaviour)");

  std::string motion_text, heart_text;
  double duration_s = 60.0, synth_fs = 125.0, noise_rms = 0.0;
  std::uint64_t seed = 1;
  CLI::App* synth = app.add_subcommand(
      "synth", "Write a synthetic recording (heart + motion harmonic series)");
  synth->add_option("--motion", motion_text, "Motion series f0,a1,..,b1,..");
  synth->add_option("--heart", heart_text, "Heart series f0,c1,..,d1,..");
  synth->add_option("--duration", duration_s, "Duration (s)");
  synth->add_option("--fs", synth_fs, "Sample rate (Hz)");
  synth->add_option("--noise-rms", noise_rms, "White-noise RMS per channel");
  synth->add_option("--seed", seed, "Noise seed");
  synth->add_option("--out", out_path, "Output CSV")->required();

  hsum::StftConfig stft_cfg;
  std::string band_text = "0.5:3";
  CLI::App* baseline = app.add_subcommand(
      "baseline", "STFT peak-picking heart-rate baseline");
  add_input(baseline, true);
  baseline->add_option("--window", stft_cfg.window.window_len_s, "Window length (s)");
  baseline->add_option("--hop", stft_cfg.window.hop_s, "Window hop (s)");
  baseline->add_option("--fft-len", stft_cfg.fft_len, "FFT length");
  baseline->add_option("--band", band_text, "Peak search band lo:hi (Hz)");
  baseline->add_flag("--full-band", stft_cfg.full_band,
                     "Search the whole spectrum instead of the band");
  baseline->add_option("--median", median_text, "3-point median filter: on/off");
  baseline->add_option("--out", out_path, "Output CSV");

  std::string signal_text = "acc", axis_text = "x";
  CLI::App* spect = app.add_subcommand(
      "spectrogram", "Export per-window magnitude spectra as long-format CSV");
  add_input(spect, true);
  spect->add_option("--signal", signal_text, "Which series: acc or ppg");
  spect->add_option("--axis", axis_text, "Accelerometer axis: x, y, z, mag");
  spect->add_option("--window", stft_cfg.window.window_len_s, "Window length (s)");
  spect->add_option("--hop", stft_cfg.window.hop_s, "Window hop (s)");
  spect->add_option("--fft-len", stft_cfg.fft_len, "FFT length");
  spect->add_option("--out", out_path, "Output CSV")->required();

  try {
    app.parse(argc, argv);

    in.fs = fs_flag > 0.0 ? std::optional<double>(fs_flag) : std::nullopt;
    if (threads > 0) hsum::set_max_threads(threads);

    if (estimate->parsed()) {
      cfg.acc_grid = parse_grid(acc_grid_text);
      cfg.heart_grid = parse_grid(hr_grid_text);
      cfg.combine = hsum::parse_combine_mode(combine_text);
      cfg.median_filter = parse_on_off(median_text, "--median");
      cfg.ppg_channel = in.channel;
      return run_estimate(in, cfg, out_path);
    }
    if (evaluate->parsed()) {
      (void)pooled;  // pooling over all inputs is the only behaviour
      return run_evaluate(estimate_paths, truth_paths, report_path,
                          ba_pairs_path);
    }
    if (synth->parsed()) {
      std::optional<SeriesSpec> motion, heart;
      if (!motion_text.empty()) motion = parse_series(motion_text);
      if (!heart_text.empty()) heart = parse_series(heart_text);
      return run_synth(motion, heart, duration_s, synth_fs, noise_rms, seed,
                       out_path);
    }
    if (baseline->parsed()) {
      const auto [lo, hi] = parse_band(band_text);
      stft_cfg.band_lo_hz = lo;
      stft_cfg.band_hi_hz = hi;
      return run_baseline(in, stft_cfg, parse_on_off(median_text, "--median"),
                          out_path);
    }
    if (spect->parsed()) {
      stft_cfg.full_band = true;
      return run_spectrogram(in, stft_cfg, signal_text, axis_text, out_path);
    }
    return 2;  // unreachable with require_subcommand(1)
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
