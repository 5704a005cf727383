#include "hsum/joint_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hsum {

void JointDesignSpec::validate() const {
  DesignSpec motion{motion_f0_hz, motion_order, n_samples, sample_rate_hz,
                    true};
  DesignSpec heart{heart_f0_hz, heart_order, n_samples, sample_rate_hz, false};
  motion.validate();
  heart.validate();
  if (n_samples <= cols()) {
    throw InputError("underdetermined joint design: " +
                     std::to_string(n_samples) + " samples for " +
                     std::to_string(cols()) + " columns");
  }
}

Eigen::MatrixXd build_joint_design(const JointDesignSpec& spec) {
  spec.validate();
  const Eigen::MatrixXd motion = build_design(
      {spec.motion_f0_hz, spec.motion_order, spec.n_samples,
       spec.sample_rate_hz, true});
  const Eigen::MatrixXd heart = build_design(
      {spec.heart_f0_hz, spec.heart_order, spec.n_samples,
       spec.sample_rate_hz, false});
  Eigen::MatrixXd combined(motion.rows(), motion.cols() + heart.cols());
  combined << motion, heart;
  return combined;
}

bool harmonic_collision(double heart_f0_hz, int heart_order,
                        double motion_f0_hz, int motion_order, double tol_hz) {
  for (int kappa = 1; kappa <= heart_order; ++kappa) {
    const double fh = kappa * heart_f0_hz;
    for (int k = 1; k <= motion_order; ++k) {
      if (std::abs(fh - k * motion_f0_hz) < tol_hz) return true;
    }
  }
  return false;
}

namespace {

int capped_heart_order(double f_hz, int order, double sample_rate_hz) {
  // Largest m with m * f < fs/2.
  const double limit = sample_rate_hz / 2.0 / f_hz;
  const int cap = static_cast<int>(std::ceil(limit)) - 1;
  return std::clamp(cap, 1, order);
}

}  // namespace

JointFit fit_heart_fundamental(const WindowView& ppg_window,
                               double motion_f0_hz, const GridSpec& heart_grid,
                               int motion_order, int heart_order,
                               const JointFitOptions& options) {
  heart_grid.validate();
  const std::size_t n_points = heart_grid.size();
  const double f_top = heart_grid.frequency(n_points - 1);

  // Validate the whole sweep up front so the parallel loop cannot throw.
  int top_order = heart_order;
  if (options.cap_heart_order_at_nyquist) {
    top_order = capped_heart_order(f_top, heart_order, ppg_window.sample_rate_hz);
  }
  JointDesignSpec top{motion_f0_hz, motion_order, f_top, top_order,
                      ppg_window.size(), ppg_window.sample_rate_hz};
  top.validate();
  if (!options.cap_heart_order_at_nyquist) {
    // the full order must clear Nyquist at every grid point
    DesignSpec{f_top, heart_order, ppg_window.size(),
               ppg_window.sample_rate_hz, false}
        .validate();
  }

  std::vector<SolveResult> solves(n_points);
  std::vector<int> orders(n_points, heart_order);
  parallel_for(n_points, [&](std::size_t i) {
    const double f = heart_grid.frequency(i);
    if (options.cap_heart_order_at_nyquist) {
      orders[i] = capped_heart_order(f, heart_order, ppg_window.sample_rate_hz);
    }
    const JointDesignSpec spec{motion_f0_hz, motion_order, f, orders[i],
                               ppg_window.size(), ppg_window.sample_rate_hz};
    solves[i] = least_squares(build_joint_design(spec), ppg_window.samples);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < n_points; ++i) {
    if (solves[i].se < solves[best].se) best = i;  // ties keep the lowest f
  }

  const SolveResult& solve = solves[best];
  const Eigen::Index motion_cols = 1 + 2 * motion_order;

  JointFit fit;
  fit.motion_f0_hz = motion_f0_hz;
  fit.heart_f0_hz = heart_grid.frequency(best);
  fit.motion_order = motion_order;
  fit.heart_order = orders[best];
  fit.amplitudes_motion = solve.amplitudes.head(motion_cols);
  fit.amplitudes_heart = solve.amplitudes.tail(2 * orders[best]);
  fit.se_p = solve.se;
  fit.window_energy = ppg_window.energy();
  fit.rank_deficient = solve.rank_deficient;
  fit.collision = harmonic_collision(fit.heart_f0_hz, fit.heart_order,
                                     motion_f0_hz, motion_order,
                                     options.collision_tol_hz);

  const SampledSignal heart = reconstruct_heartbeat(
      fit, ppg_window.size(), ppg_window.sample_rate_hz);
  double heart_energy = 0.0;
  for (const double v : heart.samples) heart_energy += v * v;
  fit.weak_heart =
      fit.window_energy > 0.0
          ? heart_energy < options.weak_heart_energy_floor * fit.window_energy
          : true;
  return fit;
}

namespace {

SampledSignal synth_pairs(const Eigen::VectorXd& amplitudes, double f0_hz,
                          std::size_t n_samples, double sample_rate_hz) {
  const std::size_t order = static_cast<std::size_t>(amplitudes.size()) / 2;
  const std::span<const double> cos_amps(amplitudes.data(), order);
  const std::span<const double> sin_amps(amplitudes.data() + order, order);
  return synth_harmonic(f0_hz, cos_amps, sin_amps, 0.0, n_samples,
                        sample_rate_hz);
}

}  // namespace

SampledSignal reconstruct_heartbeat(const JointFit& fit, std::size_t n_samples,
                                    double sample_rate_hz) {
  if (fit.amplitudes_heart.size() == 0) {
    return SampledSignal{std::vector<double>(n_samples, 0.0), sample_rate_hz};
  }
  return synth_pairs(fit.amplitudes_heart, fit.heart_f0_hz, n_samples,
                     sample_rate_hz);
}

SampledSignal reconstruct_artifact(const JointFit& fit, std::size_t n_samples,
                                   double sample_rate_hz) {
  if (fit.amplitudes_motion.size() <= 1) {
    return SampledSignal{std::vector<double>(n_samples, 0.0), sample_rate_hz};
  }
  const Eigen::VectorXd no_dc = fit.amplitudes_motion.tail(
      fit.amplitudes_motion.size() - 1);
  return synth_pairs(no_dc, fit.motion_f0_hz, n_samples, sample_rate_hz);
}

}  // namespace hsum
