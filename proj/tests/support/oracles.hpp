// Independent verification machinery for the test suites. Nothing here may
// call into the solver paths it is used to check: least-squares residuals
// are recomputed through hand-rolled Gram-Schmidt projection and spectra
// through a direct DFT.
#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hsum/harmonic_fit.hpp"

namespace hsum::testing {

// Orthonormal basis of the column space via modified Gram-Schmidt with one
// reorthogonalization pass; near-dependent columns are dropped.
Eigen::MatrixXd mgs_orthonormal_basis(const Eigen::MatrixXd& columns);

// Residual energy x'(I - P)x of the projection onto span(design), computed
// as ||x||^2 - ||Q'x||^2.
double projection_se(const Eigen::MatrixXd& design, std::span<const double> x);

// Brute-force SE at every grid frequency for the single-series model.
std::vector<double> grid_se_sweep(std::span<const double> window,
                                  double sample_rate_hz, const GridSpec& grid,
                                  int order, bool include_dc);

// Brute-force SE_p at every heart-grid frequency for the joint model with
// the motion fundamental fixed.
std::vector<double> joint_grid_se_sweep(std::span<const double> window,
                                        double sample_rate_hz,
                                        double motion_f0_hz, int motion_order,
                                        const GridSpec& heart_grid,
                                        int heart_order);

// One-sided magnitude spectrum by direct O(N*K) DFT of the zero-padded
// input.
std::vector<double> naive_dft_mag(std::span<const double> samples,
                                  std::size_t fft_len);

std::size_t argmin(std::span<const double> values);  // ties to the lowest index
std::size_t argmax(std::span<const double> values);

}  // namespace hsum::testing
