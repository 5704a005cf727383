#pragma once

#include <Eigen/Dense>
#include <span>

#include "hsum/harmonic_fit.hpp"

namespace hsum {

// Column layout of the combined design: [motion block | heart block]. The
// motion block keeps its DC column, the heart block has none.
struct JointDesignSpec {
  double motion_f0_hz{0.0};
  int motion_order{kDefaultMotionOrder};
  double heart_f0_hz{0.0};
  int heart_order{kDefaultHeartOrder};
  std::size_t n_samples{0};
  double sample_rate_hz{125.0};

  std::size_t cols() const {
    return 1u + 2u * static_cast<std::size_t>(motion_order) +
           2u * static_cast<std::size_t>(heart_order);
  }
  void validate() const;
};

Eigen::MatrixXd build_joint_design(const JointDesignSpec& spec);

// True when some heart harmonic lands within tol of a motion harmonic:
// |kappa * f_heart - k * f_motion| < tol for kappa <= heart_order and
// k <= motion_order. Such designs have (near-)duplicate columns and the
// motion/heart amplitude split is not unique.
bool harmonic_collision(double heart_f0_hz, int heart_order,
                        double motion_f0_hz, int motion_order, double tol_hz);

struct JointFitOptions {
  double collision_tol_hz{0.02};  // two default grid steps
  // heart-component energy below this fraction of the window energy is
  // reported as a weak (numerically absent) heart component
  double weak_heart_energy_floor{1e-10};
  // reduce the heart order per candidate frequency so its top harmonic
  // stays below Nyquist (moot for the default grid and rate)
  bool cap_heart_order_at_nyquist{false};
};

struct JointFit {
  double motion_f0_hz{0.0};  // fixed input
  double heart_f0_hz{0.0};   // estimated
  Eigen::VectorXd amplitudes_motion;  // (dc, a_1..a_Ma, b_1..b_Ma)
  Eigen::VectorXd amplitudes_heart;   // (c_1..c_Mh, d_1..d_Mh)
  double se_p{0.0};
  double window_energy{0.0};
  int motion_order{0};
  int heart_order{0};
  bool collision{false};
  bool weak_heart{false};
  bool rank_deficient{false};

  double hr_bpm() const { return 60.0 * heart_f0_hz; }
};

// Joint two-series fit with the motion fundamental fixed: sweeps the heart
// grid, keeps the frequency with the minimum residual (exact ties to the
// lowest), and splits the combined amplitudes into motion and heart parts.
// Colliding candidates are still evaluated (minimum-norm solve) and only
// flagged when selected.
JointFit fit_heart_fundamental(const WindowView& ppg_window,
                               double motion_f0_hz, const GridSpec& heart_grid,
                               int motion_order, int heart_order,
                               const JointFitOptions& options = {});

// Heart series alone: sum_k c_k cos(2 pi k n f_heart/fs) + d_k sin(...).
SampledSignal reconstruct_heartbeat(const JointFit& fit, std::size_t n_samples,
                                    double sample_rate_hz);

// Motion series alone, without the DC term (kept separately as
// amplitudes_motion[0]).
SampledSignal reconstruct_artifact(const JointFit& fit, std::size_t n_samples,
                                   double sample_rate_hz);

}  // namespace hsum
