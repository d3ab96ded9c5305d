#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "elflow/errors.hpp"
#include "elflow/scheme.hpp"
#include "support/oracles.hpp"

using namespace elflow;
using oracle::Real;

namespace {

SchemeConfig small_config(std::size_t n, double T) {
  SchemeConfig cfg;
  cfg.num_elements = n;
  cfg.final_time = T;
  return cfg;
}

// Literal weak forms on a uniform mesh, integrated by Simpson per element
// (exact for the piecewise quadratics involved).
struct WeakForms {
  std::size_t n;
  Real h;
  Real mu, delta;

  Real hat(std::size_t i, Real x) const {
    const Real d = std::fabs(x - static_cast<Real>(i) * h) / h;
    return d < 1 ? 1 - d : 0;
  }
  Real hat_dx(std::size_t i, std::size_t e) const {
    if (e + 1 == i) return 1 / h;
    if (e == i) return -1 / h;
    return 0;
  }
  Real value(const std::vector<Real>& v, Real x, std::size_t e) const {
    const Real s = (x - static_cast<Real>(e) * h) / h;
    return (1 - s) * v[e] + s * v[e + 1];
  }
  Real slope(const std::vector<Real>& v, std::size_t e) const { return (v[e + 1] - v[e]) / h; }
  Real q(const std::vector<Real>& u, std::size_t e) const {
    const Real p = slope(u, e);
    return std::sqrt(1 + p * p);
  }
  template <class F>
  Real on_element(std::size_t e, F&& f) const {
    return oracle::simpson(f, static_cast<Real>(e) * h, static_cast<Real>(e + 1) * h, 2);
  }

  // Height and curvature equations tested with phi_i, psi_i.
  std::pair<Real, Real> geometry_residual(std::size_t i, const std::vector<Real>& u_old,
                                          const std::vector<Real>& w_old,
                                          const std::vector<Real>& load,
                                          const std::vector<Real>& u, const std::vector<Real>& w) const {
    Real ru = 0, rw = 0;
    for (std::size_t e = 0; e < n; ++e) {
      const Real q0 = q(u_old, e);
      const Real q03 = q0 * q0 * q0;
      const Real dphi = hat_dx(i, e);
      ru += on_element(e, [&](Real x) {
        const Real phi = hat(i, x);
        const Real wo = value(w_old, x, e);
        return mu * (slope(u, e) - slope(u_old, e)) / delta * dphi +
               (value(u, x, e) - value(u_old, x, e)) * phi / (delta * q0) +
               0.5L * wo * wo * slope(u, e) * dphi / q03 + slope(w, e) * dphi / q03 -
               value(load, x, e) * phi;
      });
      rw += on_element(e, [&](Real x) {
        return value(w, x, e) * hat(i, x) / q0 - slope(u, e) * dphi / q0;
      });
    }
    return {ru, rw};
  }

  Real concentration_residual(std::size_t i, const std::vector<Real>& u_old,
                              const std::vector<Real>& u_new, const std::vector<Real>& c_old,
                              const std::vector<Real>& src, const std::vector<Real>& c) const {
    Real r = 0;
    for (std::size_t e = 0; e < n; ++e) {
      const Real q0 = q(u_old, e), q1 = q(u_new, e);
      r += on_element(e, [&](Real x) {
        const Real z = hat(i, x);
        return value(c, x, e) * q1 * z + delta * slope(c, e) * hat_dx(i, e) / q1 -
               value(c_old, x, e) * q0 * z - delta * value(src, x, e) * z;
      });
    }
    return r;
  }
};

std::vector<Real> to_real(std::span<const double> v) { return {v.begin(), v.end()}; }

State make_state(const Mesh1D& m, std::vector<double> u, std::vector<double> w,
                 std::vector<double> c) {
  NodalFunction un(m, std::move(u));
  ElementWeights g = ElementWeights::from(un);
  return State{0, 0.0, std::move(un), NodalFunction(m, std::move(w)), NodalFunction(m, std::move(c)),
               std::move(g)};
}

}  // namespace

TEST(TimeGrid, DefaultsToHSquared) {
  const TimeGrid g = resolve_time_grid(small_config(61, 1.0));
  EXPECT_EQ(g.steps, 3721u);
  EXPECT_NEAR(g.delta, 1.0 / 3721.0, 1e-18);
}

TEST(TimeGrid, RoundsAndRecomputes) {
  SchemeConfig cfg = small_config(10, 1.0);
  cfg.delta = 0.3;
  const TimeGrid g = resolve_time_grid(cfg);
  EXPECT_EQ(g.steps, 3u);
  EXPECT_DOUBLE_EQ(g.delta, 1.0 / 3.0);
  EXPECT_EQ(resolve_time_grid(small_config(10, 0.0)).steps, 0u);
}

TEST(TimeGrid, RejectsInvalidInput) {
  SchemeConfig cfg = small_config(10, 1.0);
  cfg.delta = 0.0;
  EXPECT_THROW((void)resolve_time_grid(cfg), std::invalid_argument);
  cfg = small_config(10, -1.0);
  EXPECT_THROW((void)resolve_time_grid(cfg), std::invalid_argument);
  cfg = small_config(10, 1.0);
  cfg.c_mu = -1.0;
  EXPECT_THROW((void)resolve_time_grid(cfg), std::invalid_argument);
  EXPECT_THROW((void)resolve_time_grid(small_config(1, 1.0)), std::invalid_argument);
}

TEST(SchemeConfig, Penalty) {
  SchemeConfig cfg = small_config(100, 1.0);
  cfg.c_mu = 4000.0;
  cfg.r = 2.0;
  EXPECT_NEAR(cfg.penalty(), 0.4, 1e-15);
  cfg.c_mu = 0.0;
  EXPECT_EQ(cfg.penalty(), 0.0);
}

TEST(Initializer, Names) {
  for (auto i : {Initializer::ritz, Initializer::ritz_alt, Initializer::interpolant}) {
    EXPECT_EQ(parse_initializer(to_string(i)), i);
  }
  EXPECT_THROW((void)parse_initializer("newton"), std::invalid_argument);
}

TEST(Scheme, RequiresInitialProfile) {
  EXPECT_THROW(Scheme(small_config(4, 1.0), ProblemData{}), std::invalid_argument);
}

TEST(InitialState, CaseA) {
  const auto mc = test_case_a();
  const Scheme s(small_config(61, 1.0), problem_from_case(mc));
  const State st = s.initial_state();
  for (double v : st.c.values()) EXPECT_EQ(v, 0.0);
  const ProfileJet jet = problem_from_case(mc).initial_u;
  EXPECT_LE(ritz_u_residual(jet, st.u), 1e-12);
  const NodalFunction w = initial_w(st.u);
  for (std::size_t j = 0; j < w.size(); ++j) EXPECT_EQ(st.w[j], w[j]);
  EXPECT_TRUE(st.w.has_zero_trace());
}

TEST(InitialState, CaseBResidual) {
  const auto mc = test_case_b();
  const Scheme s(small_config(81, 1.0), problem_from_case(mc));
  EXPECT_LE(ritz_u_residual(problem_from_case(mc).initial_u, s.initial_state().u), 1e-12);
}

TEST(InitialState, ZeroData) {
  const Scheme s(small_config(8, 1.0), zero_problem());
  const State st = s.initial_state();
  for (std::size_t j = 0; j < 9; ++j) {
    EXPECT_EQ(st.u[j], 0.0);
    EXPECT_EQ(st.w[j], 0.0);
    EXPECT_EQ(st.c[j], 0.0);
  }
  for (double q : st.geometry.q) EXPECT_EQ(q, 1.0);
}

TEST(InitialState, InterpolantAndAlternative) {
  SchemeConfig cfg = small_config(40, 1.0);
  const auto mc = test_case_a();
  cfg.initializer = Initializer::interpolant;
  const State a = Scheme(cfg, problem_from_case(mc)).initial_state();
  for (std::size_t j = 0; j <= 40; ++j) EXPECT_EQ(a.u[j], mc.sample(j / 40.0, 0.0).u);
  cfg.initializer = Initializer::ritz_alt;
  const State b = Scheme(cfg, problem_from_case(mc)).initial_state();
  const NodalFunction expect = initial_u_alt(problem_from_case(mc).initial_u, 0.0, 0.0, uniform_mesh(40));
  for (std::size_t j = 0; j <= 40; ++j) EXPECT_EQ(b.u[j], expect[j]);
}

TEST(Run, ZeroFixedPoint) {
  const Scheme s(small_config(8, 0.25), zero_problem());
  RunOptions opt;
  std::size_t steps = 0;
  opt.on_step = [&](const State&, const State& next) {
    ++steps;
    for (std::size_t j = 0; j < 9; ++j) {
      ASSERT_EQ(next.u[j], 0.0);
      ASSERT_EQ(next.w[j], 0.0);
      ASSERT_EQ(next.c[j], 0.0);
    }
  };
  const RunResult r = run(s, opt);
  EXPECT_EQ(steps, 16u);
  ASSERT_EQ(r.diagnostics.size(), 16u);
  for (const auto& d : r.diagnostics) {
    EXPECT_EQ(d.length, 1.0);
    EXPECT_EQ(d.bending, 0.0);
    EXPECT_EQ(d.c_mass, 0.0);
  }
}

TEST(Run, ZeroFinalTimeReturnsInitialState) {
  const Scheme s(small_config(10, 0.0), problem_from_case(test_case_a()));
  RunOptions opt;
  opt.sample_times = {0.0};
  const RunResult r = run(s, opt);
  EXPECT_EQ(r.final_state.m, 0u);
  EXPECT_TRUE(r.diagnostics.empty());
  ASSERT_EQ(r.samples.size(), 1u);
  EXPECT_EQ(r.samples[0].t, 0.0);
}

TEST(GeometryStep, MatchesHandAssembledOracle) {
  const std::size_t n = 4;
  SchemeConfig cfg = small_config(n, 1.0);
  cfg.c_mu = 3.0;
  ProblemData p = zero_problem();
  p.u_left = 0.1;
  p.u_right = -0.2;
  p.coupling = coupling_f;
  p.source_u = [](double x, double t) { return std::sin(3.0 * x) + t * t; };
  const Scheme scheme(cfg, p);
  const Mesh1D& mesh = scheme.mesh();

  const State prev = make_state(mesh, {0.1, 0.3, -0.05, 0.2, -0.2}, {0.0, 0.7, -0.4, 1.1, 0.0},
                                {0.0, 0.2, -0.1, 0.3, 0.0});
  const auto [u, w] = scheme.geometry_step(prev);

  const Real delta = scheme.time_grid().delta;
  const WeakForms wf{n, 1.0L / n, static_cast<Real>(scheme.penalty()), delta};
  const Real t1 = delta;
  std::vector<Real> load(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    load[j] = (1 - 2 * static_cast<Real>(prev.c[j])) / 10 + std::sin(3.0L * j / n) + t1 * t1;
  }
  const auto u_old = to_real(prev.u.values());
  const auto w_old = to_real(prev.w.values());
  // Unknown vector z = (u_1..u_3, w_1..w_3); boundary values fixed.
  auto unpack = [&](const std::vector<Real>& z) {
    std::vector<Real> uu(n + 1, 0), ww(n + 1, 0);
    uu[0] = 0.1L;
    uu[n] = -0.2L;
    for (std::size_t k = 0; k < n - 1; ++k) {
      uu[k + 1] = z[k];
      ww[k + 1] = z[n - 1 + k];
    }
    return std::pair{uu, ww};
  };
  auto residual = [&](const std::vector<Real>& z) {
    auto [uu, ww] = unpack(z);
    std::vector<Real> r(2 * (n - 1));
    for (std::size_t k = 0; k < n - 1; ++k) {
      const auto [ru, rw] = wf.geometry_residual(k + 1, u_old, w_old, load, uu, ww);
      r[k] = ru;
      r[n - 1 + k] = rw;
    }
    return r;
  };
  const std::size_t dim = 2 * (n - 1);
  const std::vector<Real> r0 = residual(std::vector<Real>(dim, 0));
  oracle::Dense a(dim, std::vector<Real>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Real> e(dim, 0);
    e[col] = 1;
    const auto rc = residual(e);
    for (std::size_t row = 0; row < dim; ++row) a[row][col] = rc[row] - r0[row];
  }
  std::vector<Real> b(dim);
  for (std::size_t row = 0; row < dim; ++row) b[row] = -r0[row];
  const std::vector<Real> z = oracle::dense_solve(a, b);

  EXPECT_EQ(u[0], 0.1);
  EXPECT_EQ(u[n], -0.2);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_EQ(w[n], 0.0);
  for (std::size_t k = 0; k < n - 1; ++k) {
    EXPECT_NEAR(u[k + 1], static_cast<double>(z[k]), 1e-12);
    EXPECT_NEAR(w[k + 1], static_cast<double>(z[n - 1 + k]), 1e-10);
  }
}

TEST(GeometryStep, FlatStateConstantForcing) {
  const std::size_t n = 4;
  ProblemData p = zero_problem();
  p.coupling = [](double) { return 0.1; };
  const Scheme scheme(small_config(n, 1.0), p);
  const auto [u, w] = scheme.geometry_step(scheme.initial_state());
  EXPECT_GT(u[1], 0.0);
  EXPECT_GT(u[2], u[1]);
  EXPECT_NEAR(u[1], u[3], 1e-15);
  EXPECT_NEAR(w[1], w[3], 1e-14);
  // Pushed upward the graph bends down: w = -u_xx > 0 inside.
  EXPECT_GT(w[2], 0.0);
}

TEST(ConcentrationStep, MatchesHandAssembledOracle) {
  const std::size_t n = 4;
  ProblemData p = zero_problem();
  p.source_c = [](double x, double t) { return x * (1.0 - x) + t; };
  const Scheme scheme(small_config(n, 1.0), p);
  const Mesh1D& mesh = scheme.mesh();
  const State prev = make_state(mesh, {0.0, 0.3, -0.05, 0.2, 0.1}, std::vector<double>(5, 0.0),
                                {0.0, 0.2, -0.1, 0.3, 0.0});
  const NodalFunction u_new(mesh, {0.0, 0.25, 0.1, 0.15, 0.1});
  const NodalFunction c = scheme.concentration_step(prev, u_new);

  const Real delta = scheme.time_grid().delta;
  const WeakForms wf{n, 1.0L / n, 0, delta};
  std::vector<Real> src(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Real x = static_cast<Real>(j) / n;
    src[j] = x * (1 - x) + delta;
  }
  const auto uo = to_real(prev.u.values()), un = to_real(u_new.values()),
             co = to_real(prev.c.values());
  auto residual = [&](const std::vector<Real>& z) {
    std::vector<Real> cc(n + 1, 0);
    for (std::size_t k = 0; k < n - 1; ++k) cc[k + 1] = z[k];
    std::vector<Real> r(n - 1);
    for (std::size_t k = 0; k < n - 1; ++k) r[k] = wf.concentration_residual(k + 1, uo, un, co, src, cc);
    return r;
  };
  const std::vector<Real> r0 = residual(std::vector<Real>(n - 1, 0));
  oracle::Dense a(n - 1, std::vector<Real>(n - 1));
  for (std::size_t col = 0; col < n - 1; ++col) {
    std::vector<Real> e(n - 1, 0);
    e[col] = 1;
    const auto rc = residual(e);
    for (std::size_t row = 0; row < n - 1; ++row) a[row][col] = rc[row] - r0[row];
  }
  std::vector<Real> b(r0.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = -r0[k];
  const auto z = oracle::dense_solve(a, b);
  EXPECT_TRUE(c.has_zero_trace());
  for (std::size_t k = 0; k < n - 1; ++k) EXPECT_NEAR(c[k + 1], static_cast<double>(z[k]), 1e-14);
}

TEST(ConcentrationStep, ZeroStaysZero) {
  const Scheme scheme(small_config(10, 1.0), zero_problem());
  const State s0 = scheme.initial_state();
  const NodalFunction c = scheme.concentration_step(s0, s0.u);
  for (double v : c.values()) EXPECT_EQ(v, 0.0);
}

TEST(ConcentrationStep, DiscreteMaximumPrinciple) {
  // Frozen flat geometry: one backward Euler heat step with delta = h^2.
  ProblemData p = zero_problem();
  p.initial_c = [](double x) { return std::sin(std::numbers::pi * x); };
  const Scheme scheme(small_config(16, 1.0), p);
  const State s0 = scheme.initial_state();
  const NodalFunction c1 = scheme.concentration_step(s0, s0.u);
  const double max0 = *std::max_element(s0.c.values().begin(), s0.c.values().end());
  const double max1 = *std::max_element(c1.values().begin(), c1.values().end());
  EXPECT_LE(max1, max0);
  for (double v : c1.values()) EXPECT_GE(v, 0.0);
}

TEST(ConcentrationStep, LengthElementOrdering) {
  // A stretching graph dilutes c: with Q^m on the left and Q^{m-1} on
  // the right the plain integral of c drops. Swapping the two length
  // elements makes it grow instead.
  const std::size_t n = 32;
  ProblemData p = zero_problem();
  p.initial_c = [](double x) { return std::sin(std::numbers::pi * x); };
  SchemeConfig cfg = small_config(n, 1.0);
  cfg.delta = 1e-6;
  const Scheme scheme(cfg, p);
  const Mesh1D& mesh = scheme.mesh();
  const State flat = scheme.initial_state();
  const NodalFunction bumped = interpolate([](double x) { return 0.3 * std::sin(2.0 * std::numbers::pi * x); }, mesh);
  const NodalFunction c_right = scheme.concentration_step(flat, bumped);

  const ElementWeights g_new = ElementWeights::from(bumped);
  const double delta = scheme.time_grid().delta;
  BandedMatrix lhs = weighted_mass(mesh, flat.geometry.q);
  lhs.axpy(delta, weighted_stiffness(mesh, flat.geometry.power(-1)));
  const std::vector<double> rhs_full = weighted_mass(mesh, g_new.q).multiply(flat.c.values());
  BandedMatrix a(n - 1, 1, 1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i - 1; j <= i + 1; ++j) {
      if (j >= 1 && j < n) a.at(i - 1, j - 1) = lhs(i, j);
    }
  }
  const std::vector<double> swapped =
      solve_banded(a, std::vector<double>(rhs_full.begin() + 1, rhs_full.end() - 1));

  const std::vector<double> ones(n, 1.0);
  auto plain_integral = [&](std::span<const double> v) {
    const auto mv = weighted_mass(mesh, ones).multiply(v);
    double s = 0.0;
    for (double x : mv) s += x;
    return s;
  };
  std::vector<double> swapped_full(n + 1, 0.0);
  std::copy(swapped.begin(), swapped.end(), swapped_full.begin() + 1);
  const double before = plain_integral(flat.c.values());
  const double drift_right = plain_integral(c_right.values()) - before;
  const double drift_swapped = plain_integral(swapped_full) - before;
  EXPECT_LT(drift_right, 0.0);
  EXPECT_GT(drift_swapped, 0.0);
  // The weighted mass int c Q is what the correct ordering preserves.
  const State next{1, delta, bumped, NodalFunction(mesh), c_right, g_new};
  EXPECT_NEAR(diagnose(next).c_mass, diagnose(flat).c_mass, 1e-5);
}

TEST(Run, UnforcedDecayLowersBending) {
  SchemeConfig cfg = small_config(64, 0.1);
  const Scheme scheme(cfg, decay_problem(0.1));
  const RunResult r = run(scheme);
  ASSERT_EQ(r.diagnostics.size(), scheme.time_grid().steps);
  EXPECT_LT(r.diagnostics.back().bending, r.initial_diagnostics.bending);
  double prev = r.initial_diagnostics.bending;
  double increase = 0.0;
  for (const auto& d : r.diagnostics) {
    increase += std::max(0.0, d.bending - prev);
    EXPECT_GE(d.length, 1.0);
    EXPECT_GE(d.bending, 0.0);
    prev = d.bending;
  }
  EXPECT_LE(increase, 1e-6);
}

TEST(Run, DiscreteEnergyBudget) {
  // mu |(du)_x|^2/delta + |du|^2_{1/Q}/delta + (bending^m - bending^{m-1})
  // is a consistency defect of the lagged scheme; it shrinks with delta.
  auto worst_defect = [](double delta_scale) {
    SchemeConfig cfg = small_config(32, 0.02);
    cfg.delta = delta_scale / (32.0 * 32.0);
    const Scheme scheme(cfg, decay_problem(0.3));
    const double mu = scheme.penalty();
    const double delta = scheme.time_grid().delta;
    double worst = 0.0, scale = 0.0;
    RunOptions opt;
    opt.keep_diagnostics = false;
    opt.on_step = [&](const State& a, const State& b) {
      const Mesh1D& m = a.u.mesh();
      std::vector<double> du(a.u.size());
      for (std::size_t j = 0; j < du.size(); ++j) du[j] = b.u[j] - a.u[j];
      const auto a_du = weighted_stiffness(m, std::vector<double>(m.num_elements(), 1.0)).multiply(du);
      const auto m_du = weighted_mass(m, a.geometry.power(-1)).multiply(du);
      double dissipation = 0.0;
      for (std::size_t j = 0; j < du.size(); ++j) dissipation += du[j] * (mu * a_du[j] + m_du[j]);
      dissipation /= delta;
      const double change = diagnose(b).bending - diagnose(a).bending;
      worst = std::max(worst, std::fabs(dissipation + change));
      scale = std::max(scale, dissipation);
    };
    (void)run(scheme, opt);
    return std::pair{worst, scale};
  };
  const auto [coarse, coarse_scale] = worst_defect(1.0);
  const auto [fine, fine_scale] = worst_defect(0.25);
  EXPECT_LT(coarse, coarse_scale);
  EXPECT_LT(fine, 0.5 * coarse);
  (void)fine_scale;
}

TEST(Run, TranslationEquivariance) {
  const auto mc = test_case_a();
  const double a = 0.37;
  ProblemData base = problem_from_case(mc);
  ProblemData shifted = base;
  shifted.u_left += a;
  shifted.u_right += a;
  shifted.initial_u = [f = base.initial_u, a](double x) {
    auto j = f(x);
    j[0] += a;
    return j;
  };
  const SchemeConfig cfg = small_config(16, 0.05);
  RunOptions opt;
  opt.sample_times = {0.0, 0.025, 0.05};
  const RunResult r0 = run(Scheme(cfg, base), opt);
  const RunResult r1 = run(Scheme(cfg, shifted), opt);
  ASSERT_EQ(r0.samples.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 0; j <= 16; ++j) {
      EXPECT_NEAR(r1.samples[k].u[j] - r0.samples[k].u[j], a, 1e-12);
      EXPECT_NEAR(r1.samples[k].w[j], r0.samples[k].w[j], 1e-12);
      EXPECT_NEAR(r1.samples[k].c[j], r0.samples[k].c[j], 1e-12);
    }
  }
}

TEST(Run, BoundaryValuesExact) {
  ProblemData p = problem_from_case(test_case_b());
  p.u_left = 0.25;
  p.u_right = -0.5;
  SchemeConfig cfg = small_config(12, 0.1);
  RunOptions opt;
  opt.on_step = [&](const State&, const State& s) {
    ASSERT_EQ(s.u[0], 0.25);
    ASSERT_EQ(s.u[12], -0.5);
    ASSERT_TRUE(s.w.has_zero_trace());
    ASSERT_TRUE(s.c.has_zero_trace());
  };
  (void)run(Scheme(cfg, p), opt);
}

TEST(Run, StepErrorNamesFailingStep) {
  ProblemData p = zero_problem();
  SchemeConfig cfg = small_config(8, 0.1);
  const double delta = resolve_time_grid(cfg).delta;
  p.source_u = [delta](double, double t) -> double {
    if (t > 2.5 * delta) throw std::runtime_error("source failure");
    return 0.0;
  };
  try {
    (void)run(Scheme(cfg, p));
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.step(), 3u);
    EXPECT_NE(std::string(e.what()).find("source failure"), std::string::npos);
  }
}

TEST(Diagnostics, FlatAndCurved) {
  const Mesh1D m = uniform_mesh(10);
  const State flat = make_state(m, std::vector<double>(11, 0.4), std::vector<double>(11, 0.0),
                                std::vector<double>(11, 0.0));
  const Diagnostics d = diagnose(flat);
  EXPECT_NEAR(d.length, 1.0, 1e-15);
  EXPECT_EQ(d.bending, 0.0);
  const NodalFunction u = interpolate([](double x) { return x; }, m);
  std::vector<double> uv(u.values().begin(), u.values().end());
  const State slanted = make_state(m, uv, std::vector<double>(11, 0.0), std::vector<double>(11, 1.0));
  EXPECT_NEAR(diagnose(slanted).length, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(diagnose(slanted).c_mass, std::sqrt(2.0), 1e-14);
}
