#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elflow/banded_matrix.hpp"
#include "elflow/mesh.hpp"

namespace elflow {

/// Per-element geometry of a discrete graph u_h: slope u_hx and the
/// length element Q = sqrt(1 + u_hx^2), both constant on each element.
struct ElementWeights {
  std::vector<double> slope;
  std::vector<double> q;

  [[nodiscard]] static ElementWeights from(const NodalFunction& u);

  [[nodiscard]] std::size_t size() const noexcept { return q.size(); }

  /// Per-element q^power, e.g. power(-3) for 1/Q^3.
  [[nodiscard]] std::vector<double> power(int exponent) const;
};

/// Matrix of sum_e w_e * int_{S_e} phi_i phi_j over all nodes (tridiagonal).
/// Element integrals in closed form: h/3 on the diagonal, h/6 off it.
[[nodiscard]] BandedMatrix weighted_mass(const Mesh1D& mesh, std::span<const double> weights);

/// Matrix of sum_e w_e * int_{S_e} phi_i' phi_j' over all nodes.
[[nodiscard]] BandedMatrix weighted_stiffness(const Mesh1D& mesh, std::span<const double> weights);

/// Stiffness-type matrix of the lagged bending force
/// 1/2 int w_h^2 u_x phi_x / Q^3 acting on u. The quadratic w_h^2 is
/// integrated exactly per element.
[[nodiscard]] BandedMatrix curvature_force_matrix(const Mesh1D& mesh, const NodalFunction& w,
                                                  const ElementWeights& geometry);

/// M g for the unweighted mass matrix M, i.e. int I_h(g) phi_i for all i.
[[nodiscard]] std::vector<double> load_interpolated(const Mesh1D& mesh, const NodalFunction& g);

/// M g with g given as raw nodal values.
[[nodiscard]] std::vector<double> mass_apply(const Mesh1D& mesh, std::span<const double> g);

}  // namespace elflow
