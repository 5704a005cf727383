#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hsum {

// mt19937_64 + Box-Muller. std::normal_distribution draws an
// implementation-defined sequence; this one is pinned, so seeded outputs
// are reproducible across standard libraries.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  // 53 uniform bits mapped to (0, 1]; log() never sees 0.
  double next_unit() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_{0.0};
  bool have_spare_{false};
};

}  // namespace hsum
