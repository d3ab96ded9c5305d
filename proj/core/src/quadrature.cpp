#include "elflow/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elflow {

GaussRule::GaussRule(std::size_t order) : points_(order), weights_(order) {
  if (order == 0) {
    throw std::invalid_argument("GaussRule: order must be >= 1");
  }
  const auto n = static_cast<int>(order);
  // Newton iteration on P_n from the Chebyshev-like initial guess; only the
  // first half is computed, the rest follows by symmetry.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // Map [-1,1] -> [0,1]; ascending order.
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = order - 1 - lo;
    points_[lo] = 0.5 * (1.0 - z);
    points_[hi] = 0.5 * (1.0 + z);
    weights_[lo] = 0.5 * w;
    weights_[hi] = 0.5 * w;
  }
  if (order % 2 == 1) {
    points_[order / 2] = 0.5;
  }
}

}  // namespace elflow
