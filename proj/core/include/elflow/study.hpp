#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elflow/metrics.hpp"
#include "elflow/scheme.hpp"

namespace elflow {

/// Named penalty choice mu(h) = c_mu h^r.
struct PenaltyPreset {
  std::string name;
  double c_mu;
  double r;
};

/// "40h", "4000h2", "300h1.5" and "4h0.5".
[[nodiscard]] const std::vector<PenaltyPreset>& penalty_presets();
[[nodiscard]] const PenaltyPreset& preset_by_name(const std::string& name);

/// Default refinement levels: 61..201 for case A, 61..301 for case B.
[[nodiscard]] std::vector<std::size_t> default_refinements(const std::string& case_label);

/// One full run of a manufactured case with streamed error accumulation.
[[nodiscard]] ErrorReport run_case(const ManufacturedCase& mc, const SchemeConfig& cfg,
                                   QuadratureOrders orders = {});

struct StudySpec {
  std::string case_label = "A";
  /// Node counts N; each run uses N-1 elements.
  std::vector<std::size_t> refinements = {61, 81, 101, 131, 161, 201};
  double c_mu = 40.0;
  double r = 1.0;
  std::optional<double> final_time;  ///< defaults to the case's T
  std::optional<double> delta;       ///< defaults to h^2
  Initializer initializer = Initializer::ritz;
  QuadratureOrders quadrature{};
  unsigned jobs = 1;

  /// Throws std::invalid_argument for an empty or non-increasing N list
  /// or N < 2.
  void validate() const;
};

struct RunFailure {
  std::size_t n;
  std::string message;
};

struct StudyResult {
  std::vector<ErrorReport> reports;  ///< successful runs, ordered by N
  std::vector<RunFailure> failures;
  EocTable table;
};

using ProgressSink = std::function<void(const std::string&)>;

/// Runs every N (up to `jobs` at a time). A failing run is recorded and
/// the remaining runs continue.
[[nodiscard]] StudyResult run_study(const StudySpec& spec, const ProgressSink& progress = {});

/// Writes eoc_<kind>.csv, eoc.json and/or plot_eoc.gp into `dir`.
/// Recognized formats: "csv", "json", "gnuplot".
void write_study_outputs(const StudyResult& result, const std::filesystem::path& dir,
                         const std::set<std::string>& formats);

[[nodiscard]] std::string gnuplot_script(const EocTable& table);

/// Single run: case "A", "B", "zero" or "decay".
struct SingleRunSpec {
  std::string case_label = "A";
  SchemeConfig config{};
  std::vector<double> snapshot_times;
};

struct SingleRunResult {
  RunResult run;
  std::optional<ErrorReport> errors;  ///< only for manufactured cases
};

[[nodiscard]] SingleRunResult run_single(const SingleRunSpec& spec);

/// "t,x,u,w,c", one block of rows per sample.
[[nodiscard]] std::string trajectory_csv(const std::vector<State>& samples);
/// "m,t,length,bending,c_mass", one row per entry.
[[nodiscard]] std::string diagnostics_csv(const std::vector<Diagnostics>& rows);

}  // namespace elflow
