#pragma once

#include <array>
#include <functional>
#include <string>

namespace elflow {

/// Coupling law f(c) of the forcing term and its derivative.
[[nodiscard]] inline double coupling_f(double c) noexcept { return (1.0 - 2.0 * c) / 10.0; }
[[nodiscard]] inline double coupling_f_prime(double /*c*/) noexcept { return -0.2; }

/// Pointwise values of a manufactured pair (u, c) and the partial
/// derivatives the source terms and error norms need.
struct FieldSample {
  double u = 0, u_x = 0, u_xx = 0, u_xxx = 0, u_xxxx = 0;
  double u_t = 0, u_xt = 0;
  double c = 0, c_x = 0, c_xx = 0, c_t = 0;
};

/// Q, kappa, w = -kappa Q and w_x at a point.
struct DerivedFields {
  double q = 1, kappa = 0, w = 0, w_x = 0;
};
[[nodiscard]] DerivedFields derived_fields(const FieldSample& s) noexcept;

/// A manufactured solution in separated form
///   u(x,t) = a(t) U(x),   c(x,t) = b(t) C(x).
///
/// Shapes return derivative jets in x (U through the fourth derivative,
/// C through the second); amplitudes return (value, time derivative).
/// New cases plug in here. U(0) and U(1) must vanish or a(t) must be
/// constant so that the Dirichlet data for u are time independent, and
/// C(0) = C(1) = 0.
struct ManufacturedCase {
  std::string label;
  double final_time = 1.0;
  std::function<std::array<double, 5>(double)> u_shape;
  std::function<std::array<double, 2>(double)> u_amplitude;
  std::function<std::array<double, 3>(double)> c_shape;
  std::function<std::array<double, 2>(double)> c_amplitude;
  std::function<double(double)> f = coupling_f;

  [[nodiscard]] FieldSample sample(double x, double t) const;

  /// Combines cached jets; the hot path of error quadrature.
  [[nodiscard]] static FieldSample combine(const std::array<double, 5>& u_shape_jet,
                                           const std::array<double, 2>& u_amp,
                                           const std::array<double, 3>& c_shape_jet,
                                           const std::array<double, 2>& c_amp) noexcept;

  /// u(0,t) and u(1,t), taken at t = 0.
  [[nodiscard]] std::array<double, 2> boundary_values() const;
};

/// u = 2.5 cos(2 pi t) (x-1)^3 x^5,  c = 0.1 sin(7 pi x) sin(4 pi t), T = 1.
[[nodiscard]] ManufacturedCase test_case_a();
/// u = 2.5 cos(2 pi t) (x-1)^3 x^5 sin(4 pi x),  c = 0.1 sin(2 pi x) sin(pi t), T = 1.
[[nodiscard]] ManufacturedCase test_case_b();
/// u = c = 0.
[[nodiscard]] ManufacturedCase zero_case(double final_time = 1.0);
/// Lookup by label: "A", "B" or "zero". Throws std::invalid_argument.
[[nodiscard]] ManufacturedCase case_by_label(const std::string& label);

/// Source for the height equation:
/// s_u = u_t/Q - (w_x/Q^3)_x - 1/2 (w^2 u_x/Q^3)_x - f(c).
[[nodiscard]] double source_u(const ManufacturedCase& mc, double x, double t);
[[nodiscard]] double source_u(const FieldSample& s, double f_of_c) noexcept;

/// Source for the surface diffusion equation: s_c = (cQ)_t - (c_x/Q)_x.
[[nodiscard]] double source_c(const ManufacturedCase& mc, double x, double t);
[[nodiscard]] double source_c(const FieldSample& s) noexcept;

}  // namespace elflow
