#include "elflow/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "elflow/banded_matrix.hpp"
#include "elflow/errors.hpp"

namespace elflow {

std::string to_string(Initializer init) {
  switch (init) {
    case Initializer::ritz: return "ritz";
    case Initializer::ritz_alt: return "ritz-alt";
    case Initializer::interpolant: return "interpolant";
  }
  return "ritz";
}

Initializer parse_initializer(const std::string& name) {
  if (name == "ritz") return Initializer::ritz;
  if (name == "ritz-alt") return Initializer::ritz_alt;
  if (name == "interpolant") return Initializer::interpolant;
  throw std::invalid_argument("unknown initializer '" + name + "'");
}

double SchemeConfig::penalty() const { return c_mu * std::pow(h(), r); }

TimeGrid resolve_time_grid(const SchemeConfig& cfg) {
  if (cfg.num_elements < 2) {
    throw std::invalid_argument("SchemeConfig: N must be >= 2");
  }
  if (!(cfg.c_mu >= 0.0)) {
    throw std::invalid_argument("SchemeConfig: C_mu must be >= 0");
  }
  if (!(cfg.final_time >= 0.0)) {
    throw std::invalid_argument("SchemeConfig: T must be >= 0");
  }
  const double h = cfg.h();
  const double delta = cfg.delta.value_or(h * h);
  if (!(delta > 0.0)) {
    throw std::invalid_argument("SchemeConfig: delta must be > 0");
  }
  TimeGrid grid;
  grid.steps = static_cast<std::size_t>(std::llround(cfg.final_time / delta));
  if (cfg.final_time > 0.0 && grid.steps == 0) grid.steps = 1;
  grid.delta = grid.steps == 0 ? delta : cfg.final_time / static_cast<double>(grid.steps);
  return grid;
}

ProblemData problem_from_case(const ManufacturedCase& mc) {
  ProblemData p;
  p.initial_u = [mc](double x) {
    const auto s = mc.sample(x, 0.0);
    return std::array<double, 4>{s.u, s.u_x, s.u_xx, s.u_xxx};
  };
  p.initial_c = [mc](double x) { return mc.sample(x, 0.0).c; };
  const auto ub = mc.boundary_values();
  p.u_left = ub[0];
  p.u_right = ub[1];
  p.coupling = mc.f;
  p.source_u = [mc](double x, double t) { return source_u(mc, x, t); };
  p.source_c = [mc](double x, double t) { return source_c(mc, x, t); };
  return p;
}

ProblemData zero_problem() {
  ProblemData p;
  p.initial_u = [](double) { return std::array<double, 4>{}; };
  p.initial_c = [](double) { return 0.0; };
  return p;
}

ProblemData decay_problem(double amplitude) {
  constexpr double pi = std::numbers::pi;
  ProblemData p;
  p.initial_u = [amplitude](double x) {
    const double s = std::sin(pi * x);
    const double c = std::cos(pi * x);
    return std::array<double, 4>{amplitude * s, amplitude * pi * c, -amplitude * pi * pi * s,
                                 -amplitude * pi * pi * pi * c};
  };
  p.initial_c = [](double) { return 0.0; };
  return p;
}

Diagnostics diagnose(const State& s) {
  const Mesh1D& mesh = s.u.mesh();
  Diagnostics d;
  d.m = s.m;
  d.t = s.t;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.element_size(e);
    const double q = s.geometry.q[e];
    const double a = s.w[e];
    const double b = s.w[e + 1];
    d.length += q * h;
    d.bending += 0.5 * h * (a * a + a * b + b * b) / (3.0 * q);
    d.c_mass += q * h * 0.5 * (s.c[e] + s.c[e + 1]);
  }
  return d;
}

namespace {

/// Interior unknowns k = 0..n-1 map to nodes k+1. In the coupled system
/// u_{k+1} sits at 2k and w_{k+1} at 2k+1.
constexpr std::size_t u_slot(std::size_t k) { return 2 * k; }
constexpr std::size_t w_slot(std::size_t k) { return 2 * k + 1; }

/// Rows of a full tridiagonal nodal matrix restricted to interior nodes,
/// with boundary columns applied to known values and moved to `rhs`.
BandedMatrix interior_system(const BandedMatrix& full, double left, double right,
                             std::vector<double>& rhs) {
  const std::size_t n = full.size() - 2;
  BandedMatrix a(n, 1, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    for (std::size_t j = i - 1; j <= i + 1; ++j) {
      if (j == 0) {
        rhs[k] -= full(i, j) * left;
      } else if (j == n + 1) {
        rhs[k] -= full(i, j) * right;
      } else {
        a.at(k, j - 1) = full(i, j);
      }
    }
  }
  return a;
}

std::vector<double> interior_rows(const std::vector<double>& full) {
  return {full.begin() + 1, full.end() - 1};
}

}  // namespace

Scheme::Scheme(SchemeConfig cfg, ProblemData problem)
    : cfg_(std::move(cfg)),
      problem_(std::move(problem)),
      mesh_(uniform_mesh(cfg_.num_elements)),
      grid_(resolve_time_grid(cfg_)),
      mu_(cfg_.penalty()),
      unit_weights_(cfg_.num_elements, 1.0) {
  if (!problem_.initial_u) {
    throw std::invalid_argument("Scheme: initial height profile is required");
  }
}

double Scheme::time_at(std::size_t m) const noexcept {
  return m == grid_.steps ? cfg_.final_time : static_cast<double>(m) * grid_.delta;
}

State Scheme::initial_state() const {
  const ProfileJet& u0 = problem_.initial_u;
  NodalFunction u(mesh_);
  switch (cfg_.initializer) {
    case Initializer::ritz:
      u = ritz_u(u0, problem_.u_left, problem_.u_right, mesh_, cfg_.newton);
      break;
    case Initializer::ritz_alt:
      u = initial_u_alt(u0, problem_.u_left, problem_.u_right, mesh_, cfg_.newton);
      break;
    case Initializer::interpolant:
      u = interpolate([&](double x) { return u0(x)[0]; }, mesh_);
      u[0] = problem_.u_left;
      u[mesh_.num_nodes() - 1] = problem_.u_right;
      break;
  }
  NodalFunction c(mesh_);
  if (problem_.initial_c) {
    c = interpolate(problem_.initial_c, mesh_);
    c[0] = 0.0;
    c[mesh_.num_nodes() - 1] = 0.0;
  }
  NodalFunction w = initial_w(u);
  ElementWeights geometry = ElementWeights::from(u);
  return State{0, 0.0, std::move(u), std::move(w), std::move(c), std::move(geometry)};
}

std::pair<NodalFunction, NodalFunction> Scheme::geometry_step(const State& prev) const {
  const std::size_t num_nodes = mesh_.num_nodes();
  const std::size_t n = num_nodes - 2;
  const double delta = grid_.delta;
  const double t_new = time_at(prev.m + 1);

  const std::vector<double> inv_q = prev.geometry.power(-1);
  const std::vector<double> inv_q3 = prev.geometry.power(-3);
  const BandedMatrix mass_q = weighted_mass(mesh_, inv_q);
  const BandedMatrix stiff = weighted_stiffness(mesh_, unit_weights_);
  const BandedMatrix stiff_q = weighted_stiffness(mesh_, inv_q);
  const BandedMatrix stiff_q3 = weighted_stiffness(mesh_, inv_q3);
  const BandedMatrix force = curvature_force_matrix(mesh_, prev.w, prev.geometry);

  // Velocity part (mu/delta) A + (1/delta) M_{1/Q}, applied to u^m and u^{m-1}.
  BandedMatrix velocity(num_nodes, 1, 1);
  velocity.axpy(mu_ / delta, stiff);
  velocity.axpy(1.0 / delta, mass_q);
  BandedMatrix height = velocity;
  height.axpy(1.0, force);

  std::vector<double> load(num_nodes);
  for (std::size_t j = 0; j < num_nodes; ++j) {
    const double x = mesh_.node(j);
    double g = problem_.coupling ? problem_.coupling(prev.c[j]) : 0.0;
    if (problem_.source_u) g += problem_.source_u(x, t_new);
    load[j] = g;
  }
  std::vector<double> rhs_u = velocity.multiply(prev.u.values());
  const std::vector<double> mg = mass_apply(mesh_, load);
  for (std::size_t j = 0; j < num_nodes; ++j) rhs_u[j] += mg[j];

  const double ul = problem_.u_left;
  const double ur = problem_.u_right;
  BandedMatrix system(2 * n, 3, 3);
  std::vector<double> rhs(2 * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    rhs[u_slot(k)] = rhs_u[i];
    for (std::size_t j = i - 1; j <= i + 1; ++j) {
      if (j == 0 || j == n + 1) {
        const double ub = j == 0 ? ul : ur;
        rhs[u_slot(k)] -= height(i, j) * ub;
        rhs[w_slot(k)] += stiff_q(i, j) * ub;
        continue;
      }
      const std::size_t kj = j - 1;
      system.at(u_slot(k), u_slot(kj)) = height(i, j);
      system.at(u_slot(k), w_slot(kj)) = stiff_q3(i, j);
      system.at(w_slot(k), u_slot(kj)) = -stiff_q(i, j);
      system.at(w_slot(k), w_slot(kj)) = mass_q(i, j);
    }
  }
  const std::vector<double> x = solve_banded(system, rhs);

  NodalFunction u(mesh_);
  NodalFunction w(mesh_);
  u[0] = ul;
  u[num_nodes - 1] = ur;
  for (std::size_t k = 0; k < n; ++k) {
    u[k + 1] = x[u_slot(k)];
    w[k + 1] = x[w_slot(k)];
  }
  return {std::move(u), std::move(w)};
}

NodalFunction Scheme::concentration_step(const State& prev, const NodalFunction& u_new) const {
  const std::size_t num_nodes = mesh_.num_nodes();
  const double delta = grid_.delta;
  const double t_new = time_at(prev.m + 1);
  const ElementWeights geometry_new = ElementWeights::from(u_new);

  BandedMatrix lhs = weighted_mass(mesh_, geometry_new.q);
  lhs.axpy(delta, weighted_stiffness(mesh_, geometry_new.power(-1)));

  std::vector<double> rhs = weighted_mass(mesh_, prev.geometry.q).multiply(prev.c.values());
  if (problem_.source_c) {
    std::vector<double> s(num_nodes);
    for (std::size_t j = 0; j < num_nodes; ++j) s[j] = problem_.source_c(mesh_.node(j), t_new);
    const std::vector<double> ms = mass_apply(mesh_, s);
    for (std::size_t j = 0; j < num_nodes; ++j) rhs[j] += delta * ms[j];
  }
  std::vector<double> interior_rhs = interior_rows(rhs);
  const BandedMatrix a = interior_system(lhs, 0.0, 0.0, interior_rhs);
  const std::vector<double> x = solve_banded(a, interior_rhs);
  NodalFunction c(mesh_);
  for (std::size_t k = 0; k < x.size(); ++k) c[k + 1] = x[k];
  return c;
}

State Scheme::step(const State& prev) const {
  auto [u, w] = geometry_step(prev);
  NodalFunction c = concentration_step(prev, u);
  ElementWeights geometry = ElementWeights::from(u);
  return State{prev.m + 1, time_at(prev.m + 1), std::move(u), std::move(w), std::move(c),
               std::move(geometry)};
}

RunResult run(const Scheme& scheme, const RunOptions& options) {
  const TimeGrid& grid = scheme.time_grid();
  std::vector<std::size_t> sample_levels;
  for (double t : options.sample_times) {
    const double m = grid.steps == 0 ? 0.0 : std::round(t / grid.delta);
    sample_levels.push_back(static_cast<std::size_t>(std::clamp(m, 0.0, double(grid.steps))));
  }
  auto wants_sample = [&](std::size_t m) {
    for (std::size_t level : sample_levels) {
      if (level == m) return true;
    }
    return false;
  };

  std::optional<State> state;
  try {
    state.emplace(scheme.initial_state());
  } catch (const std::exception& e) {
    throw StepError(0, e.what());
  }
  const Diagnostics initial = diagnose(*state);
  std::vector<Diagnostics> diagnostics;
  std::vector<State> samples;
  if (options.keep_diagnostics) diagnostics.reserve(grid.steps);
  if (options.on_start) options.on_start(*state);
  if (wants_sample(0)) samples.push_back(*state);

  for (std::size_t m = 1; m <= grid.steps; ++m) {
    std::optional<State> next;
    try {
      next.emplace(scheme.step(*state));
    } catch (const std::exception& e) {
      throw StepError(m, e.what());
    }
    if (options.keep_diagnostics) diagnostics.push_back(diagnose(*next));
    if (options.on_step) options.on_step(*state, *next);
    if (wants_sample(m)) samples.push_back(*next);
    state = std::move(next);
  }
  return RunResult{std::move(*state), initial, std::move(diagnostics), std::move(samples)};
}

}  // namespace elflow
