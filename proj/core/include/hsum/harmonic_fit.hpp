#pragma once

#include <Eigen/Dense>
#include <span>
#include <string_view>

#include "hsum/signal.hpp"

namespace hsum {

inline constexpr int kDefaultMotionOrder = 17;
inline constexpr int kDefaultHeartOrder = 7;

// Geometry of a trigonometric design matrix: an optional all-ones DC column
// followed by cos(2 pi k n f0/fs) columns for k = 1..order and then the
// matching sin columns, evaluated at rows n = 0..n_samples-1. Row 0 is
// therefore (1, 1...1, 0...0).
struct DesignSpec {
  double f0_hz{0.0};
  int order{1};
  std::size_t n_samples{0};
  double sample_rate_hz{125.0};
  bool include_dc{true};

  std::size_t cols() const {
    return (include_dc ? 1u : 0u) + 2u * static_cast<std::size_t>(order);
  }
  // order >= 1, all harmonics below Nyquist, more rows than columns.
  void validate() const;
};

Eigen::MatrixXd build_design(const DesignSpec& spec);

// Least-squares solution of design * a ~ window together with the residual
// energy. When the factorization detects collapsed columns (harmonic
// collisions) the minimum-norm solution is returned and rank_deficient set;
// the solve never fails.
struct SolveResult {
  Eigen::VectorXd amplitudes;
  double se{0.0};
  Eigen::Index rank{0};
  bool rank_deficient{false};
};

SolveResult least_squares(const Eigen::MatrixXd& design,
                          std::span<const double> window);

Eigen::VectorXd solve_amplitudes(const Eigen::MatrixXd& design,
                                 std::span<const double> window);

// Residual energy ||x - W a||^2 of the least-squares fit; equals the
// projection form x' (I - P) x up to rounding.
double squared_error(const Eigen::MatrixXd& design,
                     std::span<const double> window);

// Equally spaced candidate fundamentals {f_min, f_min + step, ..., <= f_max}.
struct GridSpec {
  double f_min_hz{1.0};
  double f_max_hz{3.0};
  double step_hz{0.01};

  std::size_t size() const;
  double frequency(std::size_t i) const {
    return f_min_hz + static_cast<double>(i) * step_hz;
  }
  void validate() const;
};

inline GridSpec default_motion_grid() { return GridSpec{1.0, 3.0, 0.01}; }
inline GridSpec default_heart_grid() { return GridSpec{0.5, 3.0, 0.01}; }

// One fitted harmonic-sum model.
struct HsumFit {
  double f0_hz{0.0};
  // (dc, a_1..a_M, b_1..b_M), or (a_1..a_M, b_1..b_M) without DC.
  Eigen::VectorXd amplitudes;
  double se{0.0};
  int order{0};
  bool include_dc{true};
  // se / window energy, clamped to [0, 1]. A zero-energy window reports 1:
  // the fit explains nothing, and axis selection must not prefer it.
  double relative_se{1.0};
  double window_energy{0.0};
  bool rank_deficient{false};
};

// Estimates the fundamental by evaluating the least-squares residual at
// every grid frequency and returning the argmin; exact ties go to the
// lowest frequency. Deterministic for any worker count.
HsumFit fit_fundamental(const WindowView& window, const GridSpec& grid,
                        int order, bool include_dc = true);

enum class CombineMode { kBestAxis, kL2Magnitude, kFixedAxis };

struct AxisCombine {
  CombineMode mode{CombineMode::kBestAxis};
  int axis{0};  // only used by kFixedAxis
};

// Accepts "best-axis", "l2", "axis:0".."axis:2".
AxisCombine parse_combine_mode(std::string_view text);
std::string combine_mode_name(const AxisCombine& combine);

struct MultiAxisWindow {
  std::array<WindowView, 3> axes;
};

// best-axis: fit each axis, keep the smallest relative_se (ties to the
// lowest axis index). l2: fit the per-sample Euclidean magnitude signal.
// fixed: fit one chosen axis.
HsumFit fit_multiaxis(const MultiAxisWindow& acc, const GridSpec& grid,
                      int order, const AxisCombine& combine,
                      bool include_dc = true);

}  // namespace hsum
