#include "elflow/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace elflow {
namespace {

void check_weights(const Mesh1D& mesh, std::span<const double> weights, const char* who) {
  if (weights.size() != mesh.num_elements()) {
    throw std::invalid_argument(std::string(who) + ": expected one weight per element");
  }
}

}  // namespace

ElementWeights ElementWeights::from(const NodalFunction& u) {
  const Mesh1D& mesh = u.mesh();
  ElementWeights g;
  g.slope.resize(mesh.num_elements());
  g.q.resize(mesh.num_elements());
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double p = u.eval_dx(e);
    g.slope[e] = p;
    g.q[e] = std::sqrt(1.0 + p * p);
  }
  return g;
}

std::vector<double> ElementWeights::power(int exponent) const {
  std::vector<double> out(q.size());
  for (std::size_t e = 0; e < q.size(); ++e) {
    switch (exponent) {
      case 1: out[e] = q[e]; break;
      case -1: out[e] = 1.0 / q[e]; break;
      case -3: out[e] = 1.0 / (q[e] * q[e] * q[e]); break;
      default: out[e] = std::pow(q[e], exponent); break;
    }
  }
  return out;
}

BandedMatrix weighted_mass(const Mesh1D& mesh, std::span<const double> weights) {
  check_weights(mesh, weights, "weighted_mass");
  BandedMatrix m(mesh.num_nodes(), 1, 1);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.element_size(e);
    const double diag = weights[e] * h / 3.0;
    const double off = weights[e] * h / 6.0;
    m.add(e, e, diag);
    m.add(e + 1, e + 1, diag);
    m.add(e, e + 1, off);
    m.add(e + 1, e, off);
  }
  return m;
}

BandedMatrix weighted_stiffness(const Mesh1D& mesh, std::span<const double> weights) {
  check_weights(mesh, weights, "weighted_stiffness");
  BandedMatrix a(mesh.num_nodes(), 1, 1);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double k = weights[e] / mesh.element_size(e);
    a.add(e, e, k);
    a.add(e + 1, e + 1, k);
    a.add(e, e + 1, -k);
    a.add(e + 1, e, -k);
  }
  return a;
}

BandedMatrix curvature_force_matrix(const Mesh1D& mesh, const NodalFunction& w,
                                    const ElementWeights& geometry) {
  if (!w.mesh().same_as(mesh)) {
    throw std::invalid_argument("curvature_force_matrix: w lives on a different mesh");
  }
  check_weights(mesh, geometry.q, "curvature_force_matrix");
  std::vector<double> weights(mesh.num_elements());
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.element_size(e);
    const double a = w[e];
    const double b = w[e + 1];
    const double w2_integral = h * (a * a + a * b + b * b) / 3.0;
    const double q = geometry.q[e];
    // u_x phi_x is constant per element, so the element contributes
    // (1/2) int w^2 / (Q^3 h^2) times the local +-1 pattern.
    weights[e] = 0.5 * w2_integral / (q * q * q * h);
  }
  return weighted_stiffness(mesh, weights);
}

std::vector<double> mass_apply(const Mesh1D& mesh, std::span<const double> g) {
  if (g.size() != mesh.num_nodes()) {
    throw std::invalid_argument("mass_apply: size mismatch");
  }
  std::vector<double> out(mesh.num_nodes(), 0.0);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.element_size(e);
    out[e] += h * (2.0 * g[e] + g[e + 1]) / 6.0;
    out[e + 1] += h * (g[e] + 2.0 * g[e + 1]) / 6.0;
  }
  return out;
}

std::vector<double> load_interpolated(const Mesh1D& mesh, const NodalFunction& g) {
  if (!g.mesh().same_as(mesh)) {
    throw std::invalid_argument("load_interpolated: g lives on a different mesh");
  }
  return mass_apply(mesh, g.values());
}

}  // namespace elflow
