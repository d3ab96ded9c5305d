#include "elflow/projections.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "elflow/assembly.hpp"
#include "elflow/banded_matrix.hpp"
#include "elflow/errors.hpp"
#include "elflow/quadrature.hpp"

namespace elflow {
namespace {

constexpr std::size_t kRhsGaussPoints = 5;

double unit_tangent_slope(double p) noexcept { return p / std::sqrt(1.0 + p * p); }

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Interior-node vector b_i = int g(x) phi_i'(x) dx, with g evaluated by
/// Gauss per element. Entry k corresponds to node k + 1.
template <class G>
std::vector<double> derivative_load(const Mesh1D& mesh, G&& g) {
  const GaussRule rule(kRhsGaussPoints);
  const std::size_t n = mesh.num_elements();
  std::vector<double> b(n - 1, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    const double x0 = mesh.node(e);
    const double h = mesh.element_size(e);
    double integral = 0.0;
    for (std::size_t q = 0; q < rule.order(); ++q) {
      integral += rule.weights()[q] * g(e, x0 + rule.points()[q] * h);
    }
    // integral is the element mean of g; phi' = +-1/h cancels the h.
    if (e >= 1) b[e - 1] -= integral;
    if (e + 1 < n) b[e] += integral;
  }
  return b;
}

/// Residual F_i = int psi(u_hx) phi_i' - rhs_i over interior nodes, with
/// psi(p) = p / sqrt(1 + p^2).
std::vector<double> slope_residual(const NodalFunction& uh, std::span<const double> rhs) {
  const Mesh1D& mesh = uh.mesh();
  const std::size_t n = mesh.num_elements();
  std::vector<double> r(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    r[i - 1] = unit_tangent_slope(uh.eval_dx(i - 1)) - unit_tangent_slope(uh.eval_dx(i)) -
               rhs[i - 1];
  }
  return r;
}

/// Interior block of a full nodal matrix.
BandedMatrix interior_block(const BandedMatrix& full) {
  const std::size_t n = full.size() - 2;
  BandedMatrix a(n, full.lower(), full.upper());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i >= full.lower() ? i - full.lower() : 0);
         j < n && j <= i + full.upper(); ++j) {
      a.at(i, j) = full(i + 1, j + 1);
    }
  }
  return a;
}

/// Damped Newton for int psi(u_hx) phi_i' = rhs_i with fixed end values.
NodalFunction solve_slope_equation(NodalFunction uh, std::span<const double> rhs,
                                   const NewtonConfig& cfg, const char* who) {
  if (cfg.tolerance <= 0.0 || cfg.max_iterations < 1) {
    throw std::invalid_argument(std::string(who) + ": invalid Newton configuration");
  }
  const Mesh1D& mesh = uh.mesh();
  const std::size_t n = mesh.num_elements();
  std::vector<double> residual = slope_residual(uh, rhs);
  double norm = sup_norm(residual);
  int iteration = 0;
  while (norm > cfg.tolerance) {
    if (iteration == cfg.max_iterations) {
      throw ConvergenceError(std::string(who) + ": Newton did not converge, residual " +
                                 std::to_string(norm),
                             norm, iteration);
    }
    ++iteration;
    std::vector<double> e_weights(n);
    for (std::size_t e = 0; e < n; ++e) e_weights[e] = e_function(uh.eval_dx(e));
    const BandedMatrix jacobian = interior_block(weighted_stiffness(mesh, e_weights));
    const std::vector<double> step = solve_banded(jacobian, residual);

    double lambda = 1.0;
    for (;;) {
      NodalFunction trial = uh;
      for (std::size_t i = 1; i < n; ++i) trial[i] -= lambda * step[i - 1];
      std::vector<double> trial_residual = slope_residual(trial, rhs);
      const double trial_norm = sup_norm(trial_residual);
      if (trial_norm < norm) {
        uh = std::move(trial);
        residual = std::move(trial_residual);
        norm = trial_norm;
        break;
      }
      lambda *= 0.5;
      if (lambda < cfg.min_step) {
        throw ConvergenceError(std::string(who) + ": damping step fell below minimum, residual " +
                                   std::to_string(norm),
                               norm, iteration);
      }
    }
  }
  return uh;
}

std::vector<double> ritz_u_rhs(const ProfileJet& u, const Mesh1D& mesh) {
  return derivative_load(mesh, [&](std::size_t, double x) {
    return unit_tangent_slope(u(x)[1]);
  });
}

}  // namespace

std::array<double, 2> curvature_variable(const std::array<double, 4>& jet) noexcept {
  const double ux = jet[1];
  const double uxx = jet[2];
  const double uxxx = jet[3];
  const double p = 1.0 + ux * ux;
  return {-uxx / p, -uxxx / p + 2.0 * uxx * uxx * ux / (p * p)};
}

NodalFunction ritz_u(const ProfileJet& u, double u_left, double u_right, const Mesh1D& mesh,
                     const NewtonConfig& cfg) {
  NodalFunction guess = interpolate([&](double x) { return u(x)[0]; }, mesh);
  guess[0] = u_left;
  guess[mesh.num_nodes() - 1] = u_right;
  const std::vector<double> rhs = ritz_u_rhs(u, mesh);
  return solve_slope_equation(std::move(guess), rhs, cfg, "ritz_u");
}

double ritz_u_residual(const ProfileJet& u, const NodalFunction& u_hat) {
  const std::vector<double> rhs = ritz_u_rhs(u, u_hat.mesh());
  return sup_norm(slope_residual(u_hat, rhs));
}

NodalFunction ritz_w(const ProfileJet& u, const NodalFunction& u_hat) {
  const Mesh1D& mesh = u_hat.mesh();
  const std::size_t n = mesh.num_elements();
  std::vector<double> e_weights(n);
  std::vector<double> hat_force(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double p = u_hat.eval_dx(e);
    e_weights[e] = e_function(p);
    hat_force[e] = p * e_function(p);
  }
  const std::vector<double> rhs = derivative_load(mesh, [&](std::size_t e, double x) {
    const auto jet = u(x);
    const auto [w, wx] = curvature_variable(jet);
    const double ux = jet[1];
    return e_function(ux) * wx + 0.5 * w * w * (ux * e_function(ux) - hat_force[e]);
  });
  const BandedMatrix k = interior_block(weighted_stiffness(mesh, e_weights));
  const std::vector<double> interior = solve_banded(k, rhs);
  NodalFunction w_hat(mesh);
  for (std::size_t i = 1; i < n; ++i) w_hat[i] = interior[i - 1];
  return w_hat;
}

NodalFunction initial_w(const NodalFunction& u) {
  const Mesh1D& mesh = u.mesh();
  const std::size_t n = mesh.num_elements();
  const ElementWeights geometry = ElementWeights::from(u);
  const std::vector<double> inv_q = geometry.power(-1);
  const BandedMatrix mass = interior_block(weighted_mass(mesh, inv_q));
  const std::vector<double> full_rhs = weighted_stiffness(mesh, inv_q).multiply(u.values());
  const std::vector<double> rhs(full_rhs.begin() + 1, full_rhs.end() - 1);
  const std::vector<double> interior = solve_banded(mass, rhs);
  NodalFunction w(mesh);
  for (std::size_t i = 1; i < n; ++i) w[i] = interior[i - 1];
  return w;
}

NodalFunction initial_u_alt(const ProfileJet& u, double u_left, double u_right,
                            const Mesh1D& mesh, const NewtonConfig& cfg) {
  const NodalFunction u_hat = ritz_u(u, u_left, u_right, mesh, cfg);
  const NodalFunction w_hat = ritz_w(u, u_hat);
  const ElementWeights hat_geometry = ElementWeights::from(u_hat);
  const std::vector<double> full_rhs =
      weighted_mass(mesh, hat_geometry.power(-1)).multiply(w_hat.values());
  const std::vector<double> rhs(full_rhs.begin() + 1, full_rhs.end() - 1);
  return solve_slope_equation(u_hat, rhs, cfg, "initial_u_alt");
}

}  // namespace elflow
