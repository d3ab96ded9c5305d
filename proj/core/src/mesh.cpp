#include "elflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "elflow/quadrature.hpp"

namespace elflow {

Mesh1D::Mesh1D(std::vector<double> nodes, double quasi_uniformity) {
  if (nodes.size() < 3) {
    throw std::invalid_argument("Mesh1D: at least two elements are required");
  }
  if (nodes.front() != 0.0 || nodes.back() != 1.0) {
    throw std::invalid_argument("Mesh1D: nodes must start at 0 and end at 1");
  }
  auto data = std::make_shared<Data>();
  data->sizes.reserve(nodes.size() - 1);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    const double h = nodes[j] - nodes[j - 1];
    if (!(h > 0.0)) {
      throw std::invalid_argument("Mesh1D: nodes must be strictly increasing (index " +
                                  std::to_string(j) + ")");
    }
    data->sizes.push_back(h);
  }
  data->h_max = *std::max_element(data->sizes.begin(), data->sizes.end());
  data->h_min = *std::min_element(data->sizes.begin(), data->sizes.end());
  if (data->h_min < quasi_uniformity * data->h_max) {
    throw std::invalid_argument("Mesh1D: quasi-uniformity ratio " +
                                std::to_string(data->h_min / data->h_max) + " below " +
                                std::to_string(quasi_uniformity));
  }
  data->nodes = std::move(nodes);
  data_ = std::move(data);
}

std::size_t Mesh1D::locate(double x) const {
  const auto& xs = data_->nodes;
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("Mesh1D::locate: x outside [0,1]");
  }
  auto it = std::lower_bound(xs.begin() + 1, xs.end(), x);
  return static_cast<std::size_t>(it - xs.begin()) - 1;
}

Mesh1D uniform_mesh(std::size_t num_elements) {
  if (num_elements < 2) {
    throw std::invalid_argument("uniform_mesh: N must be >= 2");
  }
  std::vector<double> nodes(num_elements + 1);
  const auto n = static_cast<double>(num_elements);
  for (std::size_t j = 0; j <= num_elements; ++j) {
    nodes[j] = static_cast<double>(j) / n;
  }
  return Mesh1D(std::move(nodes));
}

NodalFunction::NodalFunction(Mesh1D mesh)
    : mesh_(std::move(mesh)), values_(mesh_.num_nodes(), 0.0) {}

NodalFunction::NodalFunction(Mesh1D mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (values_.size() != mesh_.num_nodes()) {
    throw std::invalid_argument("NodalFunction: value count does not match node count");
  }
}

double NodalFunction::eval(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("NodalFunction::eval: x outside [0,1]");
  }
  const std::size_t e = mesh_.locate(x);
  const double x0 = mesh_.node(e);
  const double x1 = mesh_.node(e + 1);
  if (x == x0) return values_[e];
  if (x == x1) return values_[e + 1];
  return eval_local(e, (x - x0) / (x1 - x0));
}

double NodalFunction::eval_dx(std::size_t element) const {
  if (element >= mesh_.num_elements()) {
    throw std::invalid_argument("NodalFunction::eval_dx: element index out of range");
  }
  return (values_[element + 1] - values_[element]) / mesh_.element_size(element);
}

NodalFunction interpolate(const ScalarFunction& g, const Mesh1D& mesh) {
  std::vector<double> values(mesh.num_nodes());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = g(mesh.node(j));
  }
  return NodalFunction(mesh, std::move(values));
}

double basis_function(const Mesh1D& mesh, std::size_t j, double x) {
  const auto xs = mesh.nodes();
  if (j > 0 && x >= xs[j - 1] && x <= xs[j]) {
    return (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  }
  if (j + 1 < xs.size() && x >= xs[j] && x <= xs[j + 1]) {
    return (xs[j + 1] - x) / (xs[j + 1] - xs[j]);
  }
  return 0.0;
}


double l2_error(const NodalFunction& fh, const ScalarFunction& g, std::size_t points) {
  const GaussRule rule(points);
  const Mesh1D& mesh = fh.mesh();
  double sum = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double x0 = mesh.node(e);
    const double h = mesh.element_size(e);
    for (std::size_t q = 0; q < rule.order(); ++q) {
      const double s = rule.points()[q];
      const double d = g(x0 + s * h) - fh.eval_local(e, s);
      sum += rule.weights()[q] * h * d * d;
    }
  }
  return std::sqrt(sum);
}

double h1_seminorm_error(const NodalFunction& fh, const ScalarFunction& dg, std::size_t points) {
  const GaussRule rule(points);
  const Mesh1D& mesh = fh.mesh();
  double sum = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double x0 = mesh.node(e);
    const double h = mesh.element_size(e);
    const double slope = fh.eval_dx(e);
    for (std::size_t q = 0; q < rule.order(); ++q) {
      const double d = dg(x0 + rule.points()[q] * h) - slope;
      sum += rule.weights()[q] * h * d * d;
    }
  }
  return std::sqrt(sum);
}

}  // namespace elflow
