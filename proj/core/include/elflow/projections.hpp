#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "elflow/mesh.hpp"

namespace elflow {

/// A smooth height profile x -> (u, u_x, u_xx, u_xxx).
using ProfileJet = std::function<std::array<double, 4>(double)>;

struct NewtonConfig {
  double tolerance = 1e-12;  ///< sup-norm of the nonlinear residual
  int max_iterations = 50;
  double min_step = 0x1p-20;  ///< damping gives up below this step length
};

/// Derivative of p / sqrt(1 + p^2), i.e. (1 + p^2)^(-3/2).
[[nodiscard]] inline double e_function(double p) noexcept {
  const double s = 1.0 + p * p;
  return 1.0 / (s * std::sqrt(s));
}

/// Curvature variable w = -u_xx / (1 + u_x^2) and its derivative from a jet.
[[nodiscard]] std::array<double, 2> curvature_variable(const std::array<double, 4>& jet) noexcept;

/// Nonlinear Ritz projection: u_h - I_h(u_b) in X_h0 with
/// int u_hx xi_x / Q_h = int u_x xi_x / Q for all xi in X_h0.
/// Solved by damped Newton from I_h u; throws ConvergenceError.
[[nodiscard]] NodalFunction ritz_u(const ProfileJet& u, double u_left, double u_right,
                                   const Mesh1D& mesh, const NewtonConfig& cfg = {});

/// Sup-norm over interior test functions of the defining relation of ritz_u.
[[nodiscard]] double ritz_u_residual(const ProfileJet& u, const NodalFunction& u_hat);

/// Linear projection of w = -u_xx/Q^2 built on top of u_hat = ritz_u(u).
[[nodiscard]] NodalFunction ritz_w(const ProfileJet& u, const NodalFunction& u_hat);

/// Discrete curvature of a discrete graph: w in X_h0 with
/// int w xi / Q = int u_x xi_x / Q for all xi in X_h0.
[[nodiscard]] NodalFunction initial_w(const NodalFunction& u);

/// Alternative initial height: u_0h - I_h(u_b) in X_h0 with
/// int u_0hx phi_x / Q_0h = int w_hat phi / Q_hat for all phi in X_h0,
/// where (u_hat, w_hat) are the Ritz projections of u.
[[nodiscard]] NodalFunction initial_u_alt(const ProfileJet& u, double u_left, double u_right,
                                          const Mesh1D& mesh, const NewtonConfig& cfg = {});

}  // namespace elflow
