#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "elflow/manufactured.hpp"
#include "elflow/mesh.hpp"
#include "elflow/quadrature.hpp"
#include "elflow/scheme.hpp"

namespace elflow {

/// The eight monitored space-time errors. Every entry is the square of
/// the named norm, e.g. u_linf_l2 = ||u - u_h||^2_{L^inf(0,T; L^2)}.
enum class ErrorKind : std::size_t {
  u_linf_l2,
  u_linf_h1,
  u_h1_l2,
  u_h1_h1,
  w_linf_l2,
  w_l2_h1,
  c_linf_l2,
  c_l2_h1,
};
inline constexpr std::size_t kNumErrorKinds = 8;
inline constexpr std::array<ErrorKind, kNumErrorKinds> kAllErrorKinds = {
    ErrorKind::u_linf_l2, ErrorKind::u_linf_h1, ErrorKind::u_h1_l2, ErrorKind::u_h1_h1,
    ErrorKind::w_linf_l2, ErrorKind::w_l2_h1,   ErrorKind::c_linf_l2, ErrorKind::c_l2_h1};

/// Short identifier used in file names, e.g. "u_Linf_L2".
[[nodiscard]] std::string_view kind_name(ErrorKind kind) noexcept;
[[nodiscard]] ErrorKind parse_kind(std::string_view name);

struct ErrorReport {
  std::array<double, kNumErrorKinds> values{};
  std::size_t num_elements = 0;
  double delta = 0.0;
  double mu = 0.0;

  [[nodiscard]] double operator[](ErrorKind k) const noexcept {
    return values[static_cast<std::size_t>(k)];
  }
  double& operator[](ErrorKind k) noexcept { return values[static_cast<std::size_t>(k)]; }
};

struct QuadratureOrders {
  std::size_t space = 4;
  std::size_t time = 4;
};

/// Streaming accumulator of the space-time errors of a run against a
/// manufactured solution. Only two consecutive time levels are needed.
///
/// The discrete solution is linear in time on each slab. L^2-in-time
/// terms use tensor Gauss quadrature per cell; L^inf-in-time terms take
/// the max of the spatial L^2 norm over the slab's Gauss times and the
/// slab end points.
class SpacetimeErrorAccumulator {
public:
  SpacetimeErrorAccumulator(ManufacturedCase mc, const Mesh1D& mesh,
                            QuadratureOrders orders = {});

  void start(const State& initial);
  void add_slab(const State& prev, const State& next);

  [[nodiscard]] ErrorReport report() const;

private:
  struct SpatialPoint {
    std::array<double, 5> u_shape;
    std::array<double, 3> c_shape;
  };

  /// Spatial L^2 errors (squared) of u, u_x, w, c at one time level.
  void accumulate_level(const State& s);

  ManufacturedCase mc_;
  Mesh1D mesh_;
  GaussRule space_rule_;
  GaussRule time_rule_;
  std::vector<SpatialPoint> points_;  ///< element-major, space_rule_.order() per element
  std::array<double, kNumErrorKinds> values_{};
  bool started_ = false;
};

/// Errors of a stored trajectory of consecutive time levels.
[[nodiscard]] ErrorReport spacetime_errors(const ManufacturedCase& mc,
                                           const std::vector<State>& trajectory,
                                           QuadratureOrders orders = {});

struct EocRow {
  std::size_t n = 0;  ///< row label
  double error = 0.0;
  std::optional<double> eoc;  ///< absent on the first row
};

struct EocSample {
  std::size_t n = 0;  ///< row label
  double h = 0.0;     ///< mesh width
  double error = 0.0;
};

/// EOC between consecutive rows: log(E_prev / E_next) / log(h_prev / h_next).
/// Throws std::invalid_argument unless N increases and h decreases strictly.
[[nodiscard]] std::vector<EocRow> eoc(const std::vector<EocSample>& rows);

/// Per-kind EOC rows of a refinement study. Rows are labelled by the
/// number of mesh nodes N, so h = 1/(N-1).
struct EocTable {
  std::string case_label;
  double c_mu = 0.0;
  double r = 0.0;
  std::array<std::vector<EocRow>, kNumErrorKinds> kinds;

  [[nodiscard]] static EocTable from_reports(const std::vector<ErrorReport>& reports,
                                             std::string case_label, double c_mu, double r);
  [[nodiscard]] const std::vector<EocRow>& rows(ErrorKind k) const {
    return kinds[static_cast<std::size_t>(k)];
  }
};

/// Shortest decimal representation that round-trips the double.
[[nodiscard]] std::string format_double(double v);

/// "N,error,eoc" CSV of one error kind; the first row has an empty eoc.
[[nodiscard]] std::string to_csv(const std::vector<EocRow>& rows);
[[nodiscard]] std::vector<EocRow> parse_eoc_csv(std::string_view text);

[[nodiscard]] nlohmann::json to_json(const EocTable& table);
[[nodiscard]] EocTable eoc_table_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const ErrorReport& report);

}  // namespace elflow
