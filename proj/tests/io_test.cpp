#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "hsum/io.hpp"
#include "support/fixtures.hpp"

using namespace hsum;
namespace fs = std::filesystem;
namespace ht = hsum::testing;

namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("hsum_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  fs::path operator/(const char* name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = value(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(parse_double(format_double(0.1)) == 0.1);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(parse_double(format_double(inf)) == inf);
  CHECK(parse_double(format_double(-inf)) == -inf);
  CHECK_THROWS_AS(parse_double("12,5"), InputError);
  CHECK_THROWS_AS(parse_double(""), InputError);
}

TEST_CASE("recording round-trip preserves samples bit-exactly") {
  TempDir tmp;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  Recording rec;
  rec.ppg1 = {std::vector<double>(300), 125.0};
  rec.ppg2 = {std::vector<double>(300), 125.0};
  for (auto& axis : rec.acc.axes) axis = {std::vector<double>(300), 125.0};
  for (std::size_t i = 0; i < 300; ++i) {
    rec.ppg1.samples[i] = value(rng);
    rec.ppg2.samples[i] = value(rng);
    for (auto& axis : rec.acc.axes) axis.samples[i] = value(rng);
  }

  const fs::path path = tmp / "rec.csv";
  write_recording(path, rec);
  const Recording back = read_recording(path);
  CHECK(back.sample_rate_hz() == 125.0);
  CHECK(back.ppg1.samples == rec.ppg1.samples);
  CHECK(back.ppg2.samples == rec.ppg2.samples);
  for (int a = 0; a < 3; ++a) {
    CHECK(back.acc.axes[a].samples == rec.acc.axes[a].samples);
  }
}

TEST_CASE("recording header validation names the missing column") {
  TempDir tmp;
  const fs::path path = tmp / "bad.csv";
  write_text(path, "t,ppg1,ppg2,acc_x,acc_z\n0,1,1,0,0\n");
  CHECK_THROWS_WITH_AS(read_recording(path), doctest::Contains("acc_y"),
                       InputError);
}

TEST_CASE("recording without time column needs a rate") {
  TempDir tmp;
  const fs::path path = tmp / "no_t.csv";
  write_text(path, "ppg1,ppg2,acc_x,acc_y,acc_z\n1,1,0,0,0\n2,2,0,0,0\n");
  CHECK_THROWS_AS(read_recording(path), InputError);
  const Recording rec = read_recording(path, 50.0);
  CHECK(rec.sample_rate_hz() == 50.0);
  CHECK(rec.ppg1.samples == std::vector<double>{1.0, 2.0});
}

TEST_CASE("recording with an ecg column ignores it") {
  TempDir tmp;
  const fs::path path = tmp / "ecg.csv";
  write_text(path,
             "t,ppg1,ppg2,acc_x,acc_y,acc_z,ecg\n"
             "0,1,2,3,4,5,99\n0.008,6,7,8,9,10,99\n");
  const Recording rec = read_recording(path);
  CHECK(rec.sample_rate_hz() == doctest::Approx(125.0));
  CHECK(rec.ppg2.samples == std::vector<double>{2.0, 7.0});
}

TEST_CASE("recording rejects NaN samples with a line number") {
  TempDir tmp;
  const fs::path path = tmp / "nan.csv";
  write_text(path,
             "t,ppg1,ppg2,acc_x,acc_y,acc_z\n"
             "0,1,1,0,0,0\n0.008,nan,1,0,0,0\n");
  CHECK_THROWS_WITH_AS(read_recording(path), doctest::Contains(":3:"),
                       InputError);
}

TEST_CASE("recording rejects jittery time columns") {
  TempDir tmp;
  const fs::path path = tmp / "jitter.csv";
  write_text(path,
             "t,ppg1,ppg2,acc_x,acc_y,acc_z\n"
             "0,1,1,0,0,0\n0.008,1,1,0,0,0\n0.0161,1,1,0,0,0\n");
  CHECK_THROWS_AS(read_recording(path), InputError);
}

TEST_CASE("recording rate cross-check") {
  TempDir tmp;
  const fs::path path = tmp / "rate.csv";
  write_text(path,
             "t,ppg1,ppg2,acc_x,acc_y,acc_z\n"
             "0,1,1,0,0,0\n0.008,1,1,0,0,0\n");
  CHECK_NOTHROW(read_recording(path, 125.0));
  CHECK_THROWS_AS(read_recording(path, 100.0), InputError);
}

TEST_CASE("hr series round-trip is bit-exact, including inf") {
  TempDir tmp;
  HrSeries series;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(0.0, 200.0);
  for (std::size_t i = 0; i < 20; ++i) {
    HrEntry e;
    e.window_index = i;
    e.start_time_s = 2.0 * static_cast<double>(i);
    e.hr_bpm = value(rng);
    e.motion_f0_hz = value(rng) / 100.0;
    e.se_p = value(rng) * 1e-7;
    e.relative_error_energy =
        i == 3 ? std::numeric_limits<double>::infinity() : value(rng);
    e.collision = (i % 3) == 0;
    series.entries.push_back(e);
  }
  const fs::path path = tmp / "hr.csv";
  write_hr_csv(path, series);
  const HrSeries back = read_hr_csv(path);
  REQUIRE(back.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(back.entries[i].window_index == series.entries[i].window_index);
    CHECK(back.entries[i].start_time_s == series.entries[i].start_time_s);
    CHECK(back.entries[i].hr_bpm == series.entries[i].hr_bpm);
    CHECK(back.entries[i].motion_f0_hz == series.entries[i].motion_f0_hz);
    CHECK(back.entries[i].se_p == series.entries[i].se_p);
    CHECK(back.entries[i].relative_error_energy ==
          series.entries[i].relative_error_energy);
    CHECK(back.entries[i].collision == series.entries[i].collision);
  }

  // writing the read-back series reproduces the file byte for byte
  const fs::path again = tmp / "hr2.csv";
  write_hr_csv(again, back);
  CHECK(read_text(path) == read_text(again));
}

TEST_CASE("truth file validation") {
  TempDir tmp;
  const fs::path path = tmp / "truth.csv";
  write_truth(path, std::vector<double>{72.5, 80.0, 85.25});
  CHECK(read_truth(path) == std::vector<double>{72.5, 80.0, 85.25});

  write_text(tmp / "gap.csv", "window_index,bpm\n0,70\n2,80\n");
  CHECK_THROWS_AS(read_truth(tmp / "gap.csv"), InputError);
  write_text(tmp / "neg.csv", "window_index,bpm\n0,-70\n");
  CHECK_THROWS_AS(read_truth(tmp / "neg.csv"), InputError);
  write_text(tmp / "hdr.csv", "idx,bpm\n0,70\n");
  CHECK_THROWS_AS(read_truth(tmp / "hdr.csv"), InputError);
}

TEST_CASE("report writers produce the documented shape") {
  TempDir tmp;
  EvalSummary summary;
  summary.pooled =
      evaluate(std::vector<double>{70.0, 75.0, 80.0, 86.0},
               std::vector<double>{71.0, 74.0, 80.5, 85.0});
  summary.names = {"rec_a", "rec_b"};
  summary.per_recording_mae = {1.0, 0.75};
  summary.per_recording_std = {0.5, 0.25};

  const fs::path json_path = tmp / "report.json";
  write_report_json(json_path, summary);
  const std::string json_text = read_text(json_path);
  CHECK(json_text.find("\"mae_bpm\"") != std::string::npos);
  CHECK(json_text.find("\"bland_altman\"") != std::string::npos);
  CHECK(json_text.find("\"pairs\"") != std::string::npos);
  CHECK(json_text.find("\"reference_mae_bpm\"") != std::string::npos);
  CHECK(json_text.find("troika") != std::string::npos);
  CHECK(json_text.find("rec_b") != std::string::npos);

  const std::string text = render_report_text(summary);
  CHECK(text.find("mae_bpm") != std::string::npos);
  CHECK(text.find("spearman_rho") != std::string::npos);
  CHECK(text.find("rec_a") != std::string::npos);
  CHECK(text.find("hsum-median") != std::string::npos);

  const fs::path pairs_path = tmp / "ba.csv";
  write_ba_pairs_csv(pairs_path, summary.pooled);
  const std::string pairs = read_text(pairs_path);
  CHECK(pairs.rfind("mean_bpm,diff_bpm\n", 0) == 0);
  CHECK(std::count(pairs.begin(), pairs.end(), '\n') == 5);
}

TEST_CASE("spectrogram export is long-format") {
  TempDir tmp;
  Spectrogram spec;
  spec.sample_rate_hz = 125.0;
  spec.fft_len = 8;
  spec.bin_hz = {0.0, 15.625, 31.25, 46.875, 62.5};
  spec.start_time_s = {0.0, 2.0};
  spec.magnitudes = {{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}};
  const fs::path path = tmp / "spec.csv";
  write_spectrogram_csv(path, spec);
  const std::string text = read_text(path);
  CHECK(text.rfind("window_index,bin_hz,magnitude\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  CHECK(text.find("1,62.5,1\n") != std::string::npos);
}
