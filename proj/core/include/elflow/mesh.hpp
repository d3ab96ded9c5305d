#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace elflow {

/// Partition 0 = x_0 < x_1 < ... < x_N = 1 of the unit interval.
///
/// Copies are cheap and share the node storage; two meshes compare
/// equal with `same_as` only when they share it. Element `e` (0-based)
/// is the cell [x_e, x_{e+1}].
class Mesh1D {
public:
  static constexpr double kDefaultQuasiUniformity = 0.1;

  /// Throws std::invalid_argument when the nodes are not strictly
  /// increasing from 0 to 1 or when min h_j / h_max < `quasi_uniformity`.
  explicit Mesh1D(std::vector<double> nodes,
                  double quasi_uniformity = kDefaultQuasiUniformity);

  [[nodiscard]] std::size_t num_elements() const noexcept { return data_->sizes.size(); }
  [[nodiscard]] std::size_t num_nodes() const noexcept { return data_->nodes.size(); }

  [[nodiscard]] std::span<const double> nodes() const noexcept { return data_->nodes; }
  [[nodiscard]] std::span<const double> element_sizes() const noexcept { return data_->sizes; }

  [[nodiscard]] double node(std::size_t j) const { return data_->nodes[j]; }
  [[nodiscard]] double element_size(std::size_t e) const { return data_->sizes[e]; }
  [[nodiscard]] double h_max() const noexcept { return data_->h_max; }
  [[nodiscard]] double h_min() const noexcept { return data_->h_min; }
  [[nodiscard]] double quasi_uniformity_ratio() const noexcept { return data_->h_min / data_->h_max; }

  /// Element containing x; nodes belong to the element on their left
  /// except x = 0.
  [[nodiscard]] std::size_t locate(double x) const;

  [[nodiscard]] bool same_as(const Mesh1D& other) const noexcept { return data_ == other.data_; }

private:
  struct Data {
    std::vector<double> nodes;
    std::vector<double> sizes;
    double h_max = 0.0;
    double h_min = 0.0;
  };
  std::shared_ptr<const Data> data_;
};

/// N equally spaced elements on [0,1]. Requires N >= 2.
[[nodiscard]] Mesh1D uniform_mesh(std::size_t num_elements);

using ScalarFunction = std::function<double(double)>;

/// Continuous piecewise linear function given by its nodal values.
class NodalFunction {
public:
  explicit NodalFunction(Mesh1D mesh);
  NodalFunction(Mesh1D mesh, std::vector<double> values);

  [[nodiscard]] const Mesh1D& mesh() const noexcept { return mesh_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  double& operator[](std::size_t j) { return values_[j]; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Membership in the zero-trace subspace: both end values exactly 0.
  [[nodiscard]] bool has_zero_trace() const noexcept {
    return values_.front() == 0.0 && values_.back() == 0.0;
  }

  /// Value at x in [0,1]; throws std::invalid_argument outside.
  [[nodiscard]] double eval(double x) const;
  /// Constant derivative on element e.
  [[nodiscard]] double eval_dx(std::size_t element) const;
  /// Value at the local coordinate s in [0,1] of element e.
  [[nodiscard]] double eval_local(std::size_t element, double s) const noexcept {
    return (1.0 - s) * values_[element] + s * values_[element + 1];
  }

private:
  Mesh1D mesh_;
  std::vector<double> values_;
};

/// Nodal interpolant I_h g.
[[nodiscard]] NodalFunction interpolate(const ScalarFunction& g, const Mesh1D& mesh);

/// Nodal basis function phi_j evaluated at x.
[[nodiscard]] double basis_function(const Mesh1D& mesh, std::size_t j, double x);


/// ||g - f_h||_{L^2} with `points`-point Gauss per element.
[[nodiscard]] double l2_error(const NodalFunction& fh, const ScalarFunction& g,
                              std::size_t points = 5);

/// ||g' - f_h'||_{L^2}; `dg` is the exact derivative.
[[nodiscard]] double h1_seminorm_error(const NodalFunction& fh, const ScalarFunction& dg,
                                       std::size_t points = 5);

}  // namespace elflow
