#pragma once

#include <cstddef>
#include <vector>

namespace elflow {

/// Gauss-Legendre rule mapped to the reference interval [0,1].
/// Exact for polynomials of degree <= 2 * order - 1.
class GaussRule {
public:
  explicit GaussRule(std::size_t order);

  [[nodiscard]] std::size_t order() const noexcept { return points_.size(); }
  [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

  /// Integral of f over [a,b].
  template <class F>
  [[nodiscard]] double integrate(F&& f, double a, double b) const {
    const double len = b - a;
    double sum = 0.0;
    for (std::size_t q = 0; q < points_.size(); ++q) {
      sum += weights_[q] * f(a + points_[q] * len);
    }
    return sum * len;
  }

private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

}  // namespace elflow
