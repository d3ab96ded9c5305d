#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "elflow/quadrature.hpp"

using namespace elflow;

TEST(GaussRule, WeightsArePositiveAndSumToOne) {
  for (std::size_t q = 1; q <= 10; ++q) {
    const GaussRule rule(q);
    ASSERT_EQ(rule.order(), q);
    for (double w : rule.weights()) EXPECT_GT(w, 0.0);
    for (double s : rule.points()) {
      EXPECT_GT(s, 0.0);
      EXPECT_LT(s, 1.0);
    }
    const double sum = std::accumulate(rule.weights().begin(), rule.weights().end(), 0.0);
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
}

TEST(GaussRule, ExactUpToDegreeTwoQMinusOne) {
  for (std::size_t q = 1; q <= 10; ++q) {
    const GaussRule rule(q);
    for (std::size_t k = 0; k <= 2 * q - 1; ++k) {
      const double v = rule.integrate([&](double x) { return std::pow(x, static_cast<double>(k)); },
                                      0.0, 1.0);
      EXPECT_NEAR(v, 1.0 / static_cast<double>(k + 1), 1e-13) << "q=" << q << " k=" << k;
    }
  }
}

TEST(GaussRule, NotExactBeyondDegree) {
  const GaussRule rule(2);
  const double v = rule.integrate([](double x) { return x * x * x * x; }, 0.0, 1.0);
  EXPECT_GT(std::fabs(v - 0.2), 1e-4);
}

TEST(GaussRule, KnownTwoPointNodes) {
  const GaussRule rule(2);
  EXPECT_NEAR(rule.points()[0], 0.5 - 0.5 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(rule.points()[1], 0.5 + 0.5 / std::sqrt(3.0), 1e-15);
}

TEST(GaussRule, MapsToArbitraryIntervals) {
  const GaussRule rule(10);
  EXPECT_NEAR(rule.integrate([](double x) { return std::exp(x); }, -1.0, 2.0),
              std::exp(2.0) - std::exp(-1.0), 1e-12);
}

TEST(GaussRule, RejectsZeroOrder) { EXPECT_THROW(GaussRule(0), std::invalid_argument); }
