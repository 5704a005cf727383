#include "hsum/harmonic_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hsum {

void DesignSpec::validate() const {
  if (order < 1) throw InputError("model order must be >= 1");
  if (!(sample_rate_hz > 0.0)) throw InputError("sample rate must be positive");
  if (f0_hz < 0.0) throw InputError("fundamental frequency must be >= 0");
  if (static_cast<double>(order) * f0_hz >= sample_rate_hz / 2.0) {
    throw InputError("harmonic " + std::to_string(order) + " of " +
                     std::to_string(f0_hz) + " Hz is at or above Nyquist (" +
                     std::to_string(sample_rate_hz / 2.0) + " Hz)");
  }
  if (n_samples <= cols()) {
    throw InputError("underdetermined design: " + std::to_string(n_samples) +
                     " samples for " + std::to_string(cols()) + " columns");
  }
}

Eigen::MatrixXd build_design(const DesignSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.n_samples);
  const auto m = static_cast<Eigen::Index>(spec.order);
  const Eigen::Index dc = spec.include_dc ? 1 : 0;
  Eigen::MatrixXd design(n, dc + 2 * m);
  if (dc) design.col(0).setOnes();

  const double omega =
      2.0 * std::numbers::pi * spec.f0_hz / spec.sample_rate_hz;
  for (Eigen::Index row = 0; row < n; ++row) {
    // cos/sin of the fundamental phase from libm, harmonics k = 2..M by
    // complex rotation; error growth over <= M steps is negligible.
    const double c1 = std::cos(omega * static_cast<double>(row));
    const double s1 = std::sin(omega * static_cast<double>(row));
    double ck = c1, sk = s1;
    for (Eigen::Index k = 0; k < m; ++k) {
      design(row, dc + k) = std::clamp(ck, -1.0, 1.0);
      design(row, dc + m + k) = std::clamp(sk, -1.0, 1.0);
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
  }
  return design;
}

SolveResult least_squares(const Eigen::MatrixXd& design,
                          std::span<const double> window) {
  if (static_cast<std::size_t>(design.rows()) != window.size()) {
    throw InputError("design has " + std::to_string(design.rows()) +
                     " rows but the window has " +
                     std::to_string(window.size()) + " samples");
  }
  const Eigen::Map<const Eigen::VectorXd> x(window.data(),
                                            static_cast<Eigen::Index>(window.size()));
  // Complete orthogonal decomposition: numerically stable and yields the
  // minimum-norm solution when columns collapse. Harmonic collisions build
  // near-duplicate columns that differ only in rounding; pivots below
  // 1e-10 of the largest are collapsed so their coefficient split cannot
  // blow up.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-10);
  cod.compute(design);
  SolveResult result;
  result.amplitudes = cod.solve(x);
  result.rank = cod.rank();
  result.rank_deficient = result.rank < design.cols();
  result.se = (x - design * result.amplitudes).squaredNorm();
  return result;
}

Eigen::VectorXd solve_amplitudes(const Eigen::MatrixXd& design,
                                 std::span<const double> window) {
  return least_squares(design, window).amplitudes;
}

double squared_error(const Eigen::MatrixXd& design,
                     std::span<const double> window) {
  return least_squares(design, window).se;
}

std::size_t GridSpec::size() const {
  validate();
  // Guard against 0.01-step rounding excluding an intended endpoint.
  const double span = (f_max_hz - f_min_hz) / step_hz;
  return static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

void GridSpec::validate() const {
  if (!(step_hz > 0.0)) throw InputError("grid step must be positive");
  if (!(f_min_hz < f_max_hz)) {
    throw InputError("empty grid: f_min " + std::to_string(f_min_hz) +
                     " >= f_max " + std::to_string(f_max_hz));
  }
  if (f_min_hz <= 0.0) throw InputError("grid frequencies must be positive");
}

namespace {

HsumFit fit_from_solve(const SolveResult& solve, double f0_hz, int order,
                       bool include_dc, double window_energy) {
  HsumFit fit;
  fit.f0_hz = f0_hz;
  fit.amplitudes = solve.amplitudes;
  fit.se = solve.se;
  fit.order = order;
  fit.include_dc = include_dc;
  fit.window_energy = window_energy;
  fit.relative_se =
      window_energy > 0.0 ? std::clamp(solve.se / window_energy, 0.0, 1.0) : 1.0;
  fit.rank_deficient = solve.rank_deficient;
  return fit;
}

}  // namespace

HsumFit fit_fundamental(const WindowView& window, const GridSpec& grid,
                        int order, bool include_dc) {
  grid.validate();
  const std::size_t n_points = grid.size();
  // Validate once at the top of the grid so the sweep itself cannot throw.
  DesignSpec top{grid.frequency(n_points - 1), order, window.size(),
                 window.sample_rate_hz, include_dc};
  top.validate();

  std::vector<SolveResult> solves(n_points);
  parallel_for(n_points, [&](std::size_t i) {
    DesignSpec spec{grid.frequency(i), order, window.size(),
                    window.sample_rate_hz, include_dc};
    solves[i] = least_squares(build_design(spec), window.samples);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < n_points; ++i) {
    if (solves[i].se < solves[best].se) best = i;  // ties keep the lowest f
  }
  return fit_from_solve(solves[best], grid.frequency(best), order, include_dc,
                        window.energy());
}

AxisCombine parse_combine_mode(std::string_view text) {
  if (text == "best-axis") return {CombineMode::kBestAxis, 0};
  if (text == "l2") return {CombineMode::kL2Magnitude, 0};
  if (text.starts_with("axis:") && text.size() == 6 && text[5] >= '0' &&
      text[5] <= '2') {
    return {CombineMode::kFixedAxis, text[5] - '0'};
  }
  throw InputError("invalid combine mode \"" + std::string(text) +
                   "\" (expected best-axis, l2, or axis:0..axis:2)");
}

std::string combine_mode_name(const AxisCombine& combine) {
  switch (combine.mode) {
    case CombineMode::kBestAxis: return "best-axis";
    case CombineMode::kL2Magnitude: return "l2";
    case CombineMode::kFixedAxis: return "axis:" + std::to_string(combine.axis);
  }
  return "?";
}

HsumFit fit_multiaxis(const MultiAxisWindow& acc, const GridSpec& grid,
                      int order, const AxisCombine& combine, bool include_dc) {
  for (int i = 1; i < 3; ++i) {
    if (acc.axes[i].size() != acc.axes[0].size() ||
        acc.axes[i].sample_rate_hz != acc.axes[0].sample_rate_hz) {
      throw InputError("acceleration axis windows must share length and rate");
    }
  }
  switch (combine.mode) {
    case CombineMode::kFixedAxis: {
      if (combine.axis < 0 || combine.axis > 2) {
        throw InputError("axis index out of range");
      }
      return fit_fundamental(acc.axes[static_cast<std::size_t>(combine.axis)],
                             grid, order, include_dc);
    }
    case CombineMode::kL2Magnitude: {
      const auto& a = acc.axes;
      std::vector<double> magnitude(a[0].size());
      for (std::size_t n = 0; n < magnitude.size(); ++n) {
        magnitude[n] = std::sqrt(a[0].samples[n] * a[0].samples[n] +
                                 a[1].samples[n] * a[1].samples[n] +
                                 a[2].samples[n] * a[2].samples[n]);
      }
      const WindowView view{magnitude, a[0].start_index, a[0].sample_rate_hz};
      return fit_fundamental(view, grid, order, include_dc);
    }
    case CombineMode::kBestAxis: {
      HsumFit best;
      for (int i = 0; i < 3; ++i) {
        HsumFit fit = fit_fundamental(acc.axes[static_cast<std::size_t>(i)],
                                      grid, order, include_dc);
        if (i == 0 || fit.relative_se < best.relative_se) best = std::move(fit);
      }
      return best;
    }
  }
  throw InputError("invalid combine mode");
}

}  // namespace hsum
