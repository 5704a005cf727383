#include "hsum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hsum {

double ground_truth_hr(double beat_count, double duration_s) {
  if (!(duration_s > 0.0)) throw InputError("duration must be positive");
  if (beat_count < 0.0) throw InputError("beat count must be >= 0");
  return 60.0 * beat_count / duration_s;
}

namespace {

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InputError("pearson needs two equal-length series with n >= 2");
  }
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  const double denom = std::sqrt(saa * sbb);
  if (denom == 0.0) return 0.0;  // a constant series has no correlation
  return sab / denom;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    // ranks are 1-based; a tie block shares its mean rank
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  return pearson(ra, rb);
}

EvalReport evaluate(std::span<const double> estimates_bpm,
                    std::span<const double> truth_bpm) {
  if (estimates_bpm.size() != truth_bpm.size()) {
    throw InputError("estimate/truth length mismatch: " +
                     std::to_string(estimates_bpm.size()) + " vs " +
                     std::to_string(truth_bpm.size()));
  }
  if (estimates_bpm.size() < 2) throw InputError("n < 2");

  EvalReport report;
  report.n = estimates_bpm.size();
  report.errors.resize(report.n);
  report.ba_pairs.resize(report.n);
  std::vector<double> abs_errors(report.n);
  for (std::size_t i = 0; i < report.n; ++i) {
    const double diff = estimates_bpm[i] - truth_bpm[i];
    report.errors[i] = diff;
    abs_errors[i] = std::abs(diff);
    report.ba_pairs[i] = {(estimates_bpm[i] + truth_bpm[i]) / 2.0, diff};
  }

  report.mae_bpm = mean(abs_errors);
  report.std_abs_err_bpm = sample_std(abs_errors);
  report.std_signed_err_bpm = sample_std(report.errors);

  BlandAltman& ba = report.bland_altman;
  ba.mean_diff = mean(report.errors);
  ba.sd_diff = report.std_signed_err_bpm;
  ba.loa_low = ba.mean_diff - 1.96 * ba.sd_diff;
  ba.loa_high = ba.mean_diff + 1.96 * ba.sd_diff;
  std::size_t within = 0;
  for (const double d : report.errors) {
    if (d >= ba.loa_low && d <= ba.loa_high) ++within;
  }
  ba.fraction_within_loa = static_cast<double>(within) / static_cast<double>(report.n);

  report.pearson_r = pearson(estimates_bpm, truth_bpm);
  report.spearman_rho = spearman(estimates_bpm, truth_bpm);
  return report;
}

EvalReport evaluate(const HrSeries& estimates,
                    std::span<const double> truth_bpm) {
  const std::vector<double> bpm = estimates.bpm();
  return evaluate(bpm, truth_bpm);
}

}  // namespace hsum
