#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elflow/assembly.hpp"
#include "elflow/manufactured.hpp"
#include "elflow/mesh.hpp"
#include "elflow/projections.hpp"

namespace elflow {

enum class Initializer { ritz, ritz_alt, interpolant };

[[nodiscard]] std::string to_string(Initializer init);
/// "ritz", "ritz-alt" or "interpolant"; throws std::invalid_argument.
[[nodiscard]] Initializer parse_initializer(const std::string& name);

struct SchemeConfig {
  double c_mu = 40.0;                ///< penalty amplitude, mu(h) = c_mu h^r
  double r = 1.0;                    ///< penalty exponent
  std::size_t num_elements = 61;     ///< N, uniform mesh with h = 1/N
  std::optional<double> delta;       ///< time step; h^2 when unset
  double final_time = 1.0;
  Initializer initializer = Initializer::ritz;
  NewtonConfig newton{};

  [[nodiscard]] double h() const noexcept { return 1.0 / static_cast<double>(num_elements); }
  [[nodiscard]] double penalty() const;
};

/// Number of steps M = round(T / delta) and the adjusted step T / M.
struct TimeGrid {
  std::size_t steps = 0;
  double delta = 0.0;
};
/// Throws std::invalid_argument for delta <= 0, T < 0 or c_mu < 0.
[[nodiscard]] TimeGrid resolve_time_grid(const SchemeConfig& cfg);

/// Initial data, boundary values, coupling and sources of one run.
/// Empty callables mean zero.
struct ProblemData {
  ProfileJet initial_u;
  ScalarFunction initial_c;
  double u_left = 0.0;
  double u_right = 0.0;
  std::function<double(double)> coupling;
  std::function<double(double, double)> source_u;
  std::function<double(double, double)> source_c;
};

[[nodiscard]] ProblemData problem_from_case(const ManufacturedCase& mc);
/// u0 = c0 = 0, no coupling and no sources.
[[nodiscard]] ProblemData zero_problem();
/// u0 = amplitude sin(pi x), c0 = 0, no coupling and no sources.
[[nodiscard]] ProblemData decay_problem(double amplitude = 0.1);

/// Discrete solution at time level m.
struct State {
  std::size_t m = 0;
  double t = 0.0;
  NodalFunction u;
  NodalFunction w;
  NodalFunction c;
  ElementWeights geometry;
};

struct Diagnostics {
  std::size_t m = 0;
  double t = 0.0;
  double length = 0.0;   ///< int Q_h dx
  double bending = 0.0;  ///< 1/2 int w_h^2 / Q_h dx
  double c_mass = 0.0;   ///< int c_h Q_h dx
};
[[nodiscard]] Diagnostics diagnose(const State& s);

/// One configured instance of the IMEX scheme on a uniform mesh.
///
/// Each step first solves the coupled linear system for (u^m, w^m) with
/// Q, w^2 and f(c) lagged at level m-1, then the diffusion equation for
/// c^m with Q^m on the left and Q^{m-1} on the right.
class Scheme {
public:
  Scheme(SchemeConfig cfg, ProblemData problem);

  [[nodiscard]] const SchemeConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const ProblemData& problem() const noexcept { return problem_; }
  [[nodiscard]] const Mesh1D& mesh() const noexcept { return mesh_; }
  [[nodiscard]] const TimeGrid& time_grid() const noexcept { return grid_; }
  [[nodiscard]] double penalty() const noexcept { return mu_; }

  /// Level 0: u from the configured initializer, c = I_h c0, w = initial_w(u).
  [[nodiscard]] State initial_state() const;

  /// (u^m, w^m) from the state at level m-1.
  [[nodiscard]] std::pair<NodalFunction, NodalFunction> geometry_step(const State& prev) const;

  /// c^m from the state at level m-1 and the new height u^m.
  [[nodiscard]] NodalFunction concentration_step(const State& prev,
                                                 const NodalFunction& u_new) const;

  /// Full step m-1 -> m.
  [[nodiscard]] State step(const State& prev) const;

private:
  [[nodiscard]] double time_at(std::size_t m) const noexcept;

  SchemeConfig cfg_;
  ProblemData problem_;
  Mesh1D mesh_;
  TimeGrid grid_;
  double mu_;
  std::vector<double> unit_weights_;
};

struct RunOptions {
  /// Times at which full states are retained (nearest time level).
  std::vector<double> sample_times;
  bool keep_diagnostics = true;
  std::function<void(const State&)> on_start;
  std::function<void(const State& prev, const State& next)> on_step;
};

struct RunResult {
  State final_state;
  Diagnostics initial_diagnostics;
  std::vector<Diagnostics> diagnostics;  ///< one entry per step m = 1..M
  std::vector<State> samples;
};

/// Executes all M steps. Errors inside a step are rethrown as StepError.
[[nodiscard]] RunResult run(const Scheme& scheme, const RunOptions& options = {});

}  // namespace elflow
