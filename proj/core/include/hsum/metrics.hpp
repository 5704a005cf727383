#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hsum/pipeline.hpp"

namespace hsum {

// 60 * beats / duration.
double ground_truth_hr(double beat_count, double duration_s);

struct BlandAltman {
  double mean_diff{0.0};
  double sd_diff{0.0};  // sample standard deviation of the differences
  double loa_low{0.0};   // mean_diff - 1.96 * sd_diff
  double loa_high{0.0};  // mean_diff + 1.96 * sd_diff
  double fraction_within_loa{0.0};
};

struct EvalReport {
  std::size_t n{0};
  double mae_bpm{0.0};
  double std_abs_err_bpm{0.0};     // sample std of |estimate - truth|
  double std_signed_err_bpm{0.0};  // sample std of the signed differences
  BlandAltman bland_altman;
  double pearson_r{0.0};
  double spearman_rho{0.0};
  std::vector<double> errors;  // estimate - truth, per window
  // ((estimate + truth)/2, estimate - truth) pairs for agreement plots
  std::vector<std::pair<double, double>> ba_pairs;
};

// Requires equal lengths and n >= 2.
EvalReport evaluate(std::span<const double> estimates_bpm,
                    std::span<const double> truth_bpm);
EvalReport evaluate(const HrSeries& estimates, std::span<const double> truth_bpm);

double pearson(std::span<const double> a, std::span<const double> b);
// Pearson over average ranks (ties share the mean rank).
double spearman(std::span<const double> a, std::span<const double> b);
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace hsum
