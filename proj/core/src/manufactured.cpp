#include "elflow/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elflow {
namespace {

constexpr double kPi = std::numbers::pi;

/// 2.5 (x-1)^3 x^5 = 2.5 (x^8 - 3x^7 + 3x^6 - x^5) and derivatives 0..4.
std::array<double, 5> bump_polynomial(double x) {
  // Coefficients of x^0..x^8.
  static const std::array<double, 9> c0 = {0, 0, 0, 0, 0, -2.5, 7.5, -7.5, 2.5};
  std::array<double, 5> out{};
  std::array<double, 9> c = c0;
  for (std::size_t d = 0; d < out.size(); ++d) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    out[d] = v;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) c[k] = c[k + 1] * static_cast<double>(k + 1);
    c.back() = 0.0;
  }
  return out;
}

/// Derivatives 0..n of sin(k x) via sin(k x + n pi/2) k^n.
template <std::size_t N>
std::array<double, N> sine_jet(double k, double x) {
  std::array<double, N> out{};
  const double s = std::sin(k * x);
  const double c = std::cos(k * x);
  double scale = 1.0;
  for (std::size_t n = 0; n < N; ++n) {
    switch (n % 4) {
      case 0: out[n] = scale * s; break;
      case 1: out[n] = scale * c; break;
      case 2: out[n] = -scale * s; break;
      default: out[n] = -scale * c; break;
    }
    scale *= k;
  }
  return out;
}

std::array<double, 2> cos_amplitude(double omega, double t) {
  return {std::cos(omega * t), -omega * std::sin(omega * t)};
}

std::array<double, 2> sin_amplitude(double omega, double t) {
  return {std::sin(omega * t), omega * std::cos(omega * t)};
}

}  // namespace

DerivedFields derived_fields(const FieldSample& s) noexcept {
  const double p = 1.0 + s.u_x * s.u_x;
  const double q = std::sqrt(p);
  DerivedFields d;
  d.q = q;
  d.kappa = s.u_xx / (p * q);
  d.w = -s.u_xx / p;
  d.w_x = -s.u_xxx / p + 2.0 * s.u_xx * s.u_xx * s.u_x / (p * p);
  return d;
}

FieldSample ManufacturedCase::combine(const std::array<double, 5>& us,
                                      const std::array<double, 2>& ua,
                                      const std::array<double, 3>& cs,
                                      const std::array<double, 2>& ca) noexcept {
  FieldSample s;
  s.u = ua[0] * us[0];
  s.u_x = ua[0] * us[1];
  s.u_xx = ua[0] * us[2];
  s.u_xxx = ua[0] * us[3];
  s.u_xxxx = ua[0] * us[4];
  s.u_t = ua[1] * us[0];
  s.u_xt = ua[1] * us[1];
  s.c = ca[0] * cs[0];
  s.c_x = ca[0] * cs[1];
  s.c_xx = ca[0] * cs[2];
  s.c_t = ca[1] * cs[0];
  return s;
}

FieldSample ManufacturedCase::sample(double x, double t) const {
  return combine(u_shape(x), u_amplitude(t), c_shape(x), c_amplitude(t));
}

std::array<double, 2> ManufacturedCase::boundary_values() const {
  const double a = u_amplitude(0.0)[0];
  return {a * u_shape(0.0)[0], a * u_shape(1.0)[0]};
}

ManufacturedCase test_case_a() {
  ManufacturedCase mc;
  mc.label = "A";
  mc.final_time = 1.0;
  mc.u_shape = bump_polynomial;
  mc.u_amplitude = [](double t) { return cos_amplitude(2.0 * kPi, t); };
  mc.c_shape = [](double x) {
    auto s = sine_jet<3>(7.0 * kPi, x);
    for (double& v : s) v *= 0.1;
    return s;
  };
  mc.c_amplitude = [](double t) { return sin_amplitude(4.0 * kPi, t); };
  return mc;
}

ManufacturedCase test_case_b() {
  ManufacturedCase mc;
  mc.label = "B";
  mc.final_time = 1.0;
  mc.u_shape = [](double x) {
    const auto p = bump_polynomial(x);
    const auto s = sine_jet<5>(4.0 * kPi, x);
    static constexpr int binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    std::array<double, 5> out{};
    for (int n = 0; n < 5; ++n) {
      double v = 0.0;
      for (int j = 0; j <= n; ++j) v += binom[n][j] * p[j] * s[n - j];
      out[n] = v;
    }
    return out;
  };
  mc.u_amplitude = [](double t) { return cos_amplitude(2.0 * kPi, t); };
  mc.c_shape = [](double x) {
    auto s = sine_jet<3>(2.0 * kPi, x);
    for (double& v : s) v *= 0.1;
    return s;
  };
  mc.c_amplitude = [](double t) { return sin_amplitude(kPi, t); };
  return mc;
}

ManufacturedCase zero_case(double final_time) {
  ManufacturedCase mc;
  mc.label = "zero";
  mc.final_time = final_time;
  mc.u_shape = [](double) { return std::array<double, 5>{}; };
  mc.u_amplitude = [](double) { return std::array<double, 2>{1.0, 0.0}; };
  mc.c_shape = [](double) { return std::array<double, 3>{}; };
  mc.c_amplitude = [](double) { return std::array<double, 2>{1.0, 0.0}; };
  return mc;
}

ManufacturedCase case_by_label(const std::string& label) {
  if (label == "A" || label == "a") return test_case_a();
  if (label == "B" || label == "b") return test_case_b();
  if (label == "zero") return zero_case();
  throw std::invalid_argument("unknown manufactured case '" + label + "'");
}

double source_u(const FieldSample& s, double f_of_c) noexcept {
  const double ux = s.u_x;
  const double uxx = s.u_xx;
  const double uxxx = s.u_xxx;
  const double uxxxx = s.u_xxxx;
  const double p = 1.0 + ux * ux;
  const double q = std::sqrt(p);
  const double q3 = p * q;
  const double q5 = q3 * p;

  const double w = -uxx / p;
  const double wx = -uxxx / p + 2.0 * ux * uxx * uxx / (p * p);
  const double wxx = -uxxxx / p + 2.0 * ux * uxx * uxxx / (p * p) +
                     (2.0 * uxx * uxx * uxx + 4.0 * ux * uxx * uxxx) / (p * p) -
                     8.0 * ux * ux * uxx * uxx * uxx / (p * p * p);

  // (w_x / Q^3)_x with Q_x = u_x u_xx / Q.
  const double bending = wxx / q3 - 3.0 * wx * ux * uxx / q5;
  // (w^2 u_x / Q^3)_x.
  const double stretching =
      (2.0 * w * wx * ux + w * w * uxx) / q3 - 3.0 * w * w * ux * ux * uxx / q5;

  return s.u_t / q - bending - 0.5 * stretching - f_of_c;
}

double source_u(const ManufacturedCase& mc, double x, double t) {
  const FieldSample s = mc.sample(x, t);
  return source_u(s, mc.f(s.c));
}

double source_c(const FieldSample& s) noexcept {
  const double p = 1.0 + s.u_x * s.u_x;
  const double q = std::sqrt(p);
  return s.c_t * q + s.c * s.u_x * s.u_xt / q - s.c_xx / q + s.c_x * s.u_x * s.u_xx / (p * q);
}

double source_c(const ManufacturedCase& mc, double x, double t) {
  return source_c(mc.sample(x, t));
}

}  // namespace elflow
