// Seeded synthetic-signal fixtures shared by the unit and acceptance suites.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "hsum/joint_model.hpp"
#include "hsum/pipeline.hpp"

namespace hsum::testing {

struct SeriesParams {
  double f0_hz{0.0};
  std::vector<double> cos_amps;
  std::vector<double> sin_amps;

  Eigen::VectorXd stacked() const;  // (a_1..a_M, b_1..b_M)
};

// One synthetic recording window set: PPG = dc + motion + heart; the
// accelerometer carries the motion series on axis x.
struct TwoSeriesFixture {
  SeriesParams motion;
  SeriesParams heart;
  double dc{0.0};
  SampledSignal ppg;
  MultiAxisSignal acc;
};

// On-grid fundamentals with every harmonic pair at least min_gap_hz apart
// (rejection sampling), harmonic amplitudes bounded away from zero so no
// subharmonic model can explain the series.
TwoSeriesFixture make_two_series(std::mt19937_64& rng, const GridSpec& acc_grid,
                                 const GridSpec& heart_grid, int motion_order,
                                 int heart_order, std::size_t n_samples,
                                 double sample_rate_hz,
                                 double min_gap_hz = 0.05);

SeriesParams random_series(std::mt19937_64& rng, double f0_hz, int order,
                           double scale);

// Harmonic stack whose fundamental ramps linearly from f_start to f_end.
SampledSignal harmonic_chirp(double f_start_hz, double f_end_hz,
                             const std::vector<double>& cos_amps,
                             const std::vector<double>& sin_amps,
                             std::size_t n_samples, double sample_rate_hz);

void add_white_noise(SampledSignal& signal, double rms, std::uint64_t seed);

// RMS of the difference relative to the RMS of the reference.
double relative_rms_error(const Eigen::VectorXd& estimate,
                          const Eigen::VectorXd& truth);
double relative_rms_error(std::span<const double> estimate,
                          std::span<const double> truth);

inline WindowView view_of(const std::vector<double>& samples,
                          double sample_rate_hz, std::size_t start = 0) {
  return WindowView{samples, start, sample_rate_hz};
}
inline WindowView view_of(const SampledSignal& signal, std::size_t start = 0) {
  return WindowView{signal.samples, start, signal.sample_rate_hz};
}

}  // namespace hsum::testing
