#include "hsum/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hsum {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& message) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
  }
  return fields;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

double parse_field(const std::filesystem::path& path, std::size_t line,
                   const std::string& field, const char* column) {
  try {
    return parse_double(field);
  } catch (const InputError&) {
    fail(path, line, "cannot parse " + std::string(column) + " value \"" +
                         field + "\"");
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
  double value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  bool negative = false;
  if (first != last && (*first == '+' || *first == '-')) {
    negative = *first == '-';
    ++first;
  }
  // from_chars does not accept "inf"/"nan" spellings produced by to_chars
  // on some platforms; handle them here so round-trips always work.
  const std::string_view rest(first, static_cast<std::size_t>(last - first));
  if (rest == "inf" || rest == "infinity") {
    return negative ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  if (rest == "nan") return std::numeric_limits<double>::quiet_NaN();
  const auto result = std::from_chars(text.data(), last, value);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw InputError("malformed number \"" + std::string(text) + "\"");
  }
  return value;
}

const SampledSignal& Recording::ppg_channel(int one_based) const {
  if (one_based == 1) return ppg1;
  if (one_based == 2) return ppg2;
  throw InputError("ppg channel must be 1 or 2");
}

void Recording::validate() const {
  ppg1.validate();
  ppg2.validate();
  acc.validate();
  if (ppg1.size() != ppg2.size() || ppg1.size() != acc.size() ||
      ppg1.sample_rate_hz != ppg2.sample_rate_hz ||
      ppg1.sample_rate_hz != acc.sample_rate_hz()) {
    throw InputError("recording channels must share length and sample rate");
  }
}

Recording read_recording(const std::filesystem::path& path,
                         std::optional<double> sample_rate_hz) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  const std::vector<std::string> header = split_csv(line);

  const std::vector<std::string> required = {"ppg1", "ppg2", "acc_x",
                                             "acc_y", "acc_z"};
  std::vector<int> column(required.size(), -1);
  int t_column = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "t") t_column = static_cast<int>(c);
    if (header[c] == "ecg") continue;  // present in some exports, ignored
    for (std::size_t r = 0; r < required.size(); ++r) {
      if (header[c] == required[r]) column[r] = static_cast<int>(c);
    }
  }
  for (std::size_t r = 0; r < required.size(); ++r) {
    if (column[r] < 0) {
      fail(path, 1, "missing required column \"" + required[r] + "\"");
    }
  }
  if (t_column < 0 && !sample_rate_hz) {
    fail(path, 1, "no `t` column and no sample rate given");
  }

  std::vector<double> t;
  std::array<std::vector<double>, 5> channels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      fail(path, line_no, "expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(fields.size()));
    }
    if (t_column >= 0) {
      t.push_back(parse_field(path, line_no,
                              fields[static_cast<std::size_t>(t_column)], "t"));
    }
    for (std::size_t r = 0; r < required.size(); ++r) {
      const double v =
          parse_field(path, line_no,
                      fields[static_cast<std::size_t>(column[r])],
                      required[r].c_str());
      if (!std::isfinite(v)) {
        fail(path, line_no, "non-finite " + required[r] + " sample");
      }
      channels[r].push_back(v);
    }
  }
  if (channels[0].empty()) fail(path, line_no, "no data rows");

  double rate = sample_rate_hz.value_or(0.0);
  if (t_column >= 0) {
    if (t.size() < 2) fail(path, line_no, "need at least 2 rows to derive the rate");
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) fail(path, 2, "time column must be strictly increasing");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6) {
        fail(path, i + 2, "sample spacing deviates from " + format_double(dt) +
                              " s by more than 1e-6 s");
      }
    }
    const double derived = 1.0 / dt;
    if (sample_rate_hz &&
        std::abs(derived - *sample_rate_hz) > 1e-6 * derived) {
      fail(path, 1, "given rate " + format_double(*sample_rate_hz) +
                        " Hz disagrees with the time column (" +
                        format_double(derived) + " Hz)");
    }
    rate = derived;
  }

  Recording rec;
  rec.ppg1 = {std::move(channels[0]), rate};
  rec.ppg2 = {std::move(channels[1]), rate};
  rec.acc.axes[0] = {std::move(channels[2]), rate};
  rec.acc.axes[1] = {std::move(channels[3]), rate};
  rec.acc.axes[2] = {std::move(channels[4]), rate};
  rec.validate();
  return rec;
}

void write_recording(const std::filesystem::path& path,
                     const Recording& recording) {
  recording.validate();
  std::ofstream out = open_for_write(path);
  out << "t,ppg1,ppg2,acc_x,acc_y,acc_z\n";
  const double dt = 1.0 / recording.sample_rate_hz();
  for (std::size_t n = 0; n < recording.ppg1.size(); ++n) {
    out << format_double(static_cast<double>(n) * dt) << ','
        << format_double(recording.ppg1.samples[n]) << ','
        << format_double(recording.ppg2.samples[n]) << ','
        << format_double(recording.acc.axes[0].samples[n]) << ','
        << format_double(recording.acc.axes[1].samples[n]) << ','
        << format_double(recording.acc.axes[2].samples[n]) << '\n';
  }
}

std::vector<double> read_truth(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  const std::vector<std::string> header = split_csv(line);
  if (header.size() != 2 || header[0] != "window_index" || header[1] != "bpm") {
    fail(path, 1, "expected header `window_index,bpm`");
  }
  std::vector<double> bpm;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 2) fail(path, line_no, "expected 2 fields");
    const double index = parse_field(path, line_no, fields[0], "window_index");
    if (index != static_cast<double>(bpm.size())) {
      fail(path, line_no, "window_index must run 0,1,2,...");
    }
    const double value = parse_field(path, line_no, fields[1], "bpm");
    if (!std::isfinite(value) || value <= 0.0) {
      fail(path, line_no, "bpm must be positive and finite");
    }
    bpm.push_back(value);
  }
  if (bpm.empty()) fail(path, line_no, "no data rows");
  return bpm;
}

void write_truth(const std::filesystem::path& path,
                 std::span<const double> bpm) {
  std::ofstream out = open_for_write(path);
  out << "window_index,bpm\n";
  for (std::size_t i = 0; i < bpm.size(); ++i) {
    out << i << ',' << format_double(bpm[i]) << '\n';
  }
}

void write_hr_csv(const std::filesystem::path& path, const HrSeries& series) {
  std::ofstream out = open_for_write(path);
  out << "window_index,start_s,hr_bpm,f_oa_hz,se_p,rel_err_energy,collision\n";
  for (const HrEntry& e : series.entries) {
    out << e.window_index << ',' << format_double(e.start_time_s) << ','
        << format_double(e.hr_bpm) << ',' << format_double(e.motion_f0_hz)
        << ',' << format_double(e.se_p) << ','
        << format_double(e.relative_error_energy) << ','
        << (e.collision ? 1 : 0) << '\n';
  }
}

HrSeries read_hr_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  const std::vector<std::string> header = split_csv(line);
  const std::vector<std::string> expected = {
      "window_index", "start_s",        "hr_bpm",   "f_oa_hz",
      "se_p",         "rel_err_energy", "collision"};
  if (header.size() != expected.size() ||
      !std::equal(header.begin(), header.end(), expected.begin())) {
    fail(path, 1, "unexpected header");
  }
  HrSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != expected.size()) {
      fail(path, line_no, "expected " + std::to_string(expected.size()) +
                              " fields, got " + std::to_string(fields.size()));
    }
    HrEntry e;
    e.window_index = static_cast<std::size_t>(
        parse_field(path, line_no, fields[0], "window_index"));
    e.start_time_s = parse_field(path, line_no, fields[1], "start_s");
    e.hr_bpm = parse_field(path, line_no, fields[2], "hr_bpm");
    e.motion_f0_hz = parse_field(path, line_no, fields[3], "f_oa_hz");
    e.se_p = parse_field(path, line_no, fields[4], "se_p");
    e.relative_error_energy =
        parse_field(path, line_no, fields[5], "rel_err_energy");
    e.collision = parse_field(path, line_no, fields[6], "collision") != 0.0;
    series.entries.push_back(e);
  }
  return series;
}

void write_spectrogram_csv(const std::filesystem::path& path,
                           const Spectrogram& spec) {
  std::ofstream out = open_for_write(path);
  out << "window_index,bin_hz,magnitude\n";
  for (std::size_t w = 0; w < spec.n_windows(); ++w) {
    for (std::size_t k = 0; k < spec.bin_hz.size(); ++k) {
      out << w << ',' << format_double(spec.bin_hz[k]) << ','
          << format_double(spec.magnitudes[w][k]) << '\n';
    }
  }
}

namespace {

json report_json(const EvalSummary& summary) {
  const EvalReport& r = summary.pooled;
  json j;
  j["n_windows"] = r.n;
  j["mae_bpm"] = r.mae_bpm;
  j["std_abs_err_bpm"] = r.std_abs_err_bpm;
  j["std_signed_err_bpm"] = r.std_signed_err_bpm;
  j["pearson_r"] = r.pearson_r;
  j["spearman_rho"] = r.spearman_rho;
  j["bland_altman"] = {
      {"mean_diff", r.bland_altman.mean_diff},
      {"sd_diff", r.bland_altman.sd_diff},
      {"loa_low", r.bland_altman.loa_low},
      {"loa_high", r.bland_altman.loa_high},
      {"fraction_within_loa", r.bland_altman.fraction_within_loa},
  };
  json pairs = json::array();
  for (const auto& [m, d] : r.ba_pairs) pairs.push_back({m, d});
  j["bland_altman"]["pairs"] = std::move(pairs);

  if (!summary.names.empty()) {
    json rows = json::array();
    for (std::size_t i = 0; i < summary.names.size(); ++i) {
      rows.push_back({{"name", summary.names[i]},
                      {"mae_bpm", summary.per_recording_mae[i]},
                      {"std_abs_err_bpm", summary.per_recording_std[i]}});
    }
    j["per_recording"] = std::move(rows);
  }

  json refs = json::array();
  for (const auto& row : reference_table()) {
    refs.push_back({{"method", std::string(row.method)},
                    {"per_subject_mae_bpm", row.mae_bpm}});
  }
  j["reference_mae_bpm"] = std::move(refs);
  return j;
}

}  // namespace

std::string render_report_text(const EvalSummary& summary) {
  const EvalReport& r = summary.pooled;
  std::ostringstream out;
  out << "windows:        " << r.n << '\n';
  out << "mae_bpm:        " << format_double(r.mae_bpm) << '\n';
  out << "std_abs_err:    " << format_double(r.std_abs_err_bpm) << '\n';
  out << "std_signed_err: " << format_double(r.std_signed_err_bpm) << '\n';
  out << "pearson_r:      " << format_double(r.pearson_r) << '\n';
  out << "spearman_rho:   " << format_double(r.spearman_rho) << '\n';
  out << "bland_altman:   mean " << format_double(r.bland_altman.mean_diff)
      << ", sd " << format_double(r.bland_altman.sd_diff) << ", loa ["
      << format_double(r.bland_altman.loa_low) << ", "
      << format_double(r.bland_altman.loa_high) << "], within "
      << format_double(r.bland_altman.fraction_within_loa) << '\n';
  if (!summary.names.empty()) {
    out << "per recording (mae / std of |err|):\n";
    for (std::size_t i = 0; i < summary.names.size(); ++i) {
      out << "  " << summary.names[i] << ": "
          << format_double(summary.per_recording_mae[i]) << " / "
          << format_double(summary.per_recording_std[i]) << '\n';
    }
  }
  out << "published per-subject MAE (BPM), S1..S12:\n";
  for (const auto& row : reference_table()) {
    out << "  " << row.method << ":";
    for (const double v : row.mae_bpm) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

void write_report_json(const std::filesystem::path& path,
                       const EvalSummary& summary) {
  std::ofstream out = open_for_write(path);
  out << report_json(summary).dump(2) << '\n';
}

void write_report_text(const std::filesystem::path& path,
                       const EvalSummary& summary) {
  std::ofstream out = open_for_write(path);
  out << render_report_text(summary);
}

void write_ba_pairs_csv(const std::filesystem::path& path,
                        const EvalReport& report) {
  std::ofstream out = open_for_write(path);
  out << "mean_bpm,diff_bpm\n";
  for (const auto& [m, d] : report.ba_pairs) {
    out << format_double(m) << ',' << format_double(d) << '\n';
  }
}

}  // namespace hsum
