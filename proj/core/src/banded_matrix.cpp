#include "elflow/banded_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "elflow/errors.hpp"

namespace elflow {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(lower), upper_(upper), band_(n * (lower + upper + 1), 0.0) {}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) {
    throw std::out_of_range("BandedMatrix: (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside the band");
  }
  return band_[index(i, j)];
}

void BandedMatrix::axpy(double alpha, const BandedMatrix& other) {
  if (other.n_ != n_ || other.lower_ > lower_ || other.upper_ > upper_) {
    throw std::invalid_argument("BandedMatrix::axpy: incompatible shapes");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= other.lower_ ? i - other.lower_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + other.upper_);
    for (std::size_t j = j0; j <= j1; ++j) {
      band_[index(i, j)] += alpha * other.band_[other.index(i, j)];
    }
  }
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("BandedMatrix::multiply: size mismatch");
  }
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + upper_);
    double sum = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) {
      sum += band_[index(i, j)] * x[j];
    }
    y[i] = sum;
  }
  return y;
}

void BandedMatrix::factorize(double pivot_tolerance) {
  if (factorized_) return;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t jmax = std::min(n_ - 1, k + upper_);
    double scale = 0.0;
    for (std::size_t j = (k >= lower_ ? k - lower_ : 0); j <= jmax; ++j) {
      scale = std::max(scale, std::abs(band_[index(k, j)]));
    }
    const double pivot = band_[index(k, k)];
    if (!(std::abs(pivot) > pivot_tolerance * scale)) {
      throw SingularMatrixError("BandedMatrix::factorize: pivot " + std::to_string(pivot) +
                                " at row " + std::to_string(k));
    }
    const std::size_t imax = std::min(n_ - 1, k + lower_);
    for (std::size_t i = k + 1; i <= imax; ++i) {
      double& lik = band_[index(i, k)];
      lik /= pivot;
      if (lik == 0.0) continue;
      for (std::size_t j = k + 1; j <= jmax; ++j) {
        band_[index(i, j)] -= lik * band_[index(k, j)];
      }
    }
  }
  factorized_ = true;
}

std::vector<double> BandedMatrix::solve(std::span<const double> rhs) const {
  if (!factorized_) {
    throw std::logic_error("BandedMatrix::solve: matrix not factorized");
  }
  if (rhs.size() != n_) {
    throw std::invalid_argument("BandedMatrix::solve: size mismatch");
  }
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= lower_ ? i - lower_ : 0;
    double sum = x[i];
    for (std::size_t j = j0; j < i; ++j) {
      sum -= band_[index(i, j)] * x[j];
    }
    x[i] = sum;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    const std::size_t j1 = std::min(n_ - 1, ii + upper_);
    double sum = x[ii];
    for (std::size_t j = ii + 1; j <= j1; ++j) {
      sum -= band_[index(ii, j)] * x[j];
    }
    x[ii] = sum / band_[index(ii, ii)];
  }
  return x;
}

std::vector<double> solve_dense(const BandedMatrix& a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (b.size() != n) {
    throw std::invalid_argument("solve_dense: size mismatch");
  }
  if (a.is_factorized()) {
    throw std::logic_error("solve_dense: expects an unfactorized matrix");
  }
  std::vector<double> m(n * n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = a(i, j);
      scale = std::max(scale, std::abs(m[i * n + j]));
    }
  }
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
    }
    if (!(std::abs(m[p * n + k]) > 1e-14 * scale)) {
      throw SingularMatrixError("solve_dense: matrix is singular at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = m[i * n + k] / m[k * n + k];
      if (l == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= l * m[k * n + j];
      x[i] -= l * x[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double sum = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) sum -= m[ii * n + j] * x[j];
    x[ii] = sum / m[ii * n + ii];
  }
  return x;
}

std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b) {
  if (a.is_factorized()) {
    return a.solve(b);
  }
  BandedMatrix lu = a;
  try {
    lu.factorize();
  } catch (const SingularMatrixError&) {
    return solve_dense(a, b);
  }
  return lu.solve(b);
}

}  // namespace elflow
