// Command-line driver: refinement studies and single runs of the
// elastic-flow / surface-diffusion scheme.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "elflow/errors.hpp"
#include "elflow/study.hpp"

namespace {

struct PenaltyOptions {
  std::string preset;
  std::optional<double> c_mu;
  std::optional<double> r;

  void add_to(CLI::App& app) {
    app.add_option("--preset", preset, "penalty preset: 40h, 4000h2, 300h1.5, 4h0.5")
        ->check(CLI::IsMember({"40h", "4000h2", "300h1.5", "4h0.5"}));
    app.add_option("--cmu", c_mu, "penalty amplitude C_mu (overrides the preset)");
    app.add_option("--r", r, "penalty exponent r (overrides the preset)");
  }

  [[nodiscard]] std::pair<double, double> resolve() const {
    double cm = 40.0;
    double rr = 1.0;
    if (!preset.empty()) {
      const auto& p = elflow::preset_by_name(preset);
      cm = p.c_mu;
      rr = p.r;
    }
    return {c_mu.value_or(cm), r.value_or(rr)};
  }
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-element solver for elastic flow of a graph coupled to surface diffusion"};
  app.require_subcommand(1);

  // study
  auto* study = app.add_subcommand("study", "refinement study with EOC tables");
  std::string study_case = "A";
  std::vector<std::size_t> study_ns;
  PenaltyOptions study_penalty;
  std::optional<double> study_t;
  std::optional<double> study_delta;
  std::string study_init = "ritz";
  std::string study_out = "out";
  std::vector<std::string> study_formats = {"csv", "json", "gnuplot"};
  unsigned study_jobs = 1;
  std::size_t quad_space = 4;
  std::size_t quad_time = 4;
  study->add_option("--case", study_case, "manufactured case")
      ->check(CLI::IsMember({"A", "B"}));
  study->add_option("--N", study_ns, "comma-separated node counts; each mesh has N-1 elements")->delimiter(',');
  study_penalty.add_to(*study);
  study->add_option("--T", study_t, "final time (default: the case's T)");
  study->add_option("--delta", study_delta, "time step (default: h^2)");
  study->add_option("--initializer", study_init, "ritz | ritz-alt | interpolant")
      ->check(CLI::IsMember({"ritz", "ritz-alt", "interpolant"}));
  study->add_option("--out", study_out, "output directory");
  study->add_option("--format", study_formats, "csv,json,gnuplot")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "gnuplot"}));
  study->add_option("--jobs", study_jobs, "parallel runs")->check(CLI::PositiveNumber);
  study->add_option("--quad-space", quad_space, "Gauss points per element in x");
  study->add_option("--quad-time", quad_time, "Gauss points per time slab");

  // run
  auto* single = app.add_subcommand("run", "single run with trajectory and diagnostics output");
  std::string run_case = "A";
  std::size_t run_n = 61;
  PenaltyOptions run_penalty;
  std::optional<double> run_t;
  std::optional<double> run_delta;
  std::string run_init = "ritz";
  std::string run_out = "out";
  std::vector<double> snapshots;
  single->add_option("--case", run_case, "A | B | zero | decay")
      ->check(CLI::IsMember({"A", "B", "zero", "decay"}));
  single->add_option("--N", run_n, "element count")->check(CLI::Range(2, 1000000));
  run_penalty.add_to(*single);
  single->add_option("--T", run_t, "final time (default 1)");
  single->add_option("--delta", run_delta, "time step (default: h^2)");
  single->add_option("--initializer", run_init, "ritz | ritz-alt | interpolant")
      ->check(CLI::IsMember({"ritz", "ritz-alt", "interpolant"}));
  single->add_option("--out", run_out, "output directory");
  single->add_option("--snapshots", snapshots, "comma-separated sample times")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (study->parsed()) {
      elflow::StudySpec spec;
      spec.case_label = study_case;
      spec.refinements = study_ns.empty() ? elflow::default_refinements(study_case) : study_ns;
      std::tie(spec.c_mu, spec.r) = study_penalty.resolve();
      spec.final_time = study_t;
      spec.delta = study_delta;
      spec.initializer = elflow::parse_initializer(study_init);
      spec.jobs = study_jobs;
      spec.quadrature = {quad_space, quad_time};
      const auto result = elflow::run_study(spec, [](const std::string& msg) {
        std::cerr << "[study] " << msg << '\n';
      });
      const std::set<std::string> formats(study_formats.begin(), study_formats.end());
      elflow::write_study_outputs(result, study_out, formats);
      std::cerr << "[study] " << result.reports.size() << " runs written to " << study_out
                << '\n';
      for (const auto& f : result.failures) {
        std::cerr << "[study] FAILED N=" << f.n << ": " << f.message << '\n';
      }
      return result.failures.empty() ? EXIT_SUCCESS : EXIT_FAILURE;
    }

    elflow::SingleRunSpec spec;
    spec.case_label = run_case;
    spec.config.num_elements = run_n;
    std::tie(spec.config.c_mu, spec.config.r) = run_penalty.resolve();
    spec.config.final_time = run_t.value_or(1.0);
    spec.config.delta = run_delta;
    spec.config.initializer = elflow::parse_initializer(run_init);
    spec.snapshot_times = snapshots.empty()
                              ? std::vector<double>{0.0, spec.config.final_time}
                              : snapshots;
    std::cerr << "[run] case " << run_case << ", N=" << run_n << '\n';
    const auto result = elflow::run_single(spec);
    const std::filesystem::path dir(run_out);
    std::filesystem::create_directories(dir);
    write_text(dir / "trajectory.csv", elflow::trajectory_csv(result.run.samples));
    write_text(dir / "diagnostics.csv", elflow::diagnostics_csv(result.run.diagnostics));
    if (result.errors) {
      write_text(dir / "errors.json", elflow::to_json(*result.errors).dump(2) + "\n");
    }
    std::cerr << "[run] " << result.run.diagnostics.size() << " steps written to " << run_out
              << '\n';
    return EXIT_SUCCESS;
  } catch (const elflow::StepError& e) {
    std::cerr << "error: solver failed at step " << e.step() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
