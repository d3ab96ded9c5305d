#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elflow {

/// Square matrix with `lower` sub- and `upper` super-diagonals.
///
/// Storage is row-major over the band: entry (i, j) with
/// -lower <= j - i <= upper lives at i * (lower + upper + 1) + (j - i + lower).
class BandedMatrix {
public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t lower() const noexcept { return lower_; }
  [[nodiscard]] std::size_t upper() const noexcept { return upper_; }

  [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept {
    return j + lower_ >= i && j <= i + upper_;
  }
  /// Zero outside the band.
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return in_band(i, j) ? band_[index(i, j)] : 0.0;
  }
  /// Throws std::out_of_range outside the band.
  double& at(std::size_t i, std::size_t j);
  void add(std::size_t i, std::size_t j, double v) { at(i, j) += v; }

  /// this += alpha * other; bandwidths of `other` must fit.
  void axpy(double alpha, const BandedMatrix& other);

  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

  [[nodiscard]] bool is_factorized() const noexcept { return factorized_; }

  /// In-place LU without pivoting. L has a unit diagonal and shares the
  /// band storage. Throws SingularMatrixError when |pivot| <= tol * scale
  /// where scale is the largest entry magnitude of the pivot's row.
  void factorize(double pivot_tolerance = 1e-14);

  /// Solves with the stored factors; requires is_factorized().
  [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;

private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * (lower_ + upper_ + 1) + (j + lower_ - i);
  }

  std::size_t n_;
  std::size_t lower_;
  std::size_t upper_;
  std::vector<double> band_;
  bool factorized_ = false;
};

/// Solves A x = b. Tries band LU first and falls back to dense
/// Gaussian elimination with partial pivoting on a pivot failure.
/// Throws SingularMatrixError if both fail.
[[nodiscard]] std::vector<double> solve_banded(const BandedMatrix& a, std::span<const double> b);

/// Dense partial-pivoting solve of a banded system (the fallback path).
[[nodiscard]] std::vector<double> solve_dense(const BandedMatrix& a, std::span<const double> b);

}  // namespace elflow
