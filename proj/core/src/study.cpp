#include "elflow/study.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace elflow {

const std::vector<PenaltyPreset>& penalty_presets() {
  static const std::vector<PenaltyPreset> presets = {
      {"40h", 40.0, 1.0},
      {"4000h2", 4000.0, 2.0},
      {"300h1.5", 300.0, 1.5},
      {"4h0.5", 4.0, 0.5},
  };
  return presets;
}

const PenaltyPreset& preset_by_name(const std::string& name) {
  for (const auto& p : penalty_presets()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown penalty preset '" + name + "'");
}

std::vector<std::size_t> default_refinements(const std::string& case_label) {
  if (case_label == "B" || case_label == "b") return {61, 81, 101, 131, 161, 201, 251, 301};
  return {61, 81, 101, 131, 161, 201};
}

ErrorReport run_case(const ManufacturedCase& mc, const SchemeConfig& cfg,
                     QuadratureOrders orders) {
  const Scheme scheme(cfg, problem_from_case(mc));
  SpacetimeErrorAccumulator acc(mc, scheme.mesh(), orders);
  RunOptions options;
  options.keep_diagnostics = false;
  options.on_start = [&](const State& s) { acc.start(s); };
  options.on_step = [&](const State& prev, const State& next) { acc.add_slab(prev, next); };
  (void)run(scheme, options);
  ErrorReport report = acc.report();
  report.delta = scheme.time_grid().delta;
  report.mu = scheme.penalty();
  return report;
}

void StudySpec::validate() const {
  if (refinements.empty()) {
    throw std::invalid_argument("StudySpec: at least one N is required");
  }
  if (refinements.front() < 2) {
    throw std::invalid_argument("StudySpec: N counts nodes and must be at least 2");
  }
  for (std::size_t i = 1; i < refinements.size(); ++i) {
    if (refinements[i] <= refinements[i - 1]) {
      throw std::invalid_argument("StudySpec: N list must be strictly increasing");
    }
  }
}

StudyResult run_study(const StudySpec& spec, const ProgressSink& progress) {
  spec.validate();
  const ManufacturedCase mc = case_by_label(spec.case_label);
  const std::size_t count = spec.refinements.size();
  std::vector<std::optional<ErrorReport>> reports(count);
  std::vector<std::string> errors(count);
  std::mutex log_mutex;
  auto log = [&](const std::string& msg) {
    if (!progress) return;
    std::lock_guard lock(log_mutex);
    progress(msg);
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      SchemeConfig cfg;
      cfg.c_mu = spec.c_mu;
      cfg.r = spec.r;
      cfg.num_elements = spec.refinements[i] - 1;
      cfg.delta = spec.delta;
      cfg.final_time = spec.final_time.value_or(mc.final_time);
      cfg.initializer = spec.initializer;
      const std::string tag = "N=" + std::to_string(spec.refinements[i]);
      log(tag + ": running");
      try {
        reports[i] = run_case(mc, cfg, spec.quadrature);
        log(tag + ": done");
      } catch (const std::exception& e) {
        errors[i] = e.what();
        log(tag + ": failed: " + e.what());
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  StudyResult result;
  for (std::size_t i = 0; i < count; ++i) {
    if (reports[i]) {
      result.reports.push_back(*reports[i]);
    } else {
      result.failures.push_back({spec.refinements[i], errors[i]});
    }
  }
  result.table = EocTable::from_reports(result.reports, mc.label, spec.c_mu, spec.r);
  return result;
}

std::string gnuplot_script(const EocTable& table) {
  std::ostringstream gp;
  gp << "# error vs N, case " << table.case_label << ", mu(h) = " << format_double(table.c_mu)
     << " h^" << format_double(table.r) << "\n";
  gp << "set datafile separator ','\n";
  gp << "set logscale xy\n";
  gp << "set xlabel 'N'\n";
  gp << "set ylabel 'squared error'\n";
  gp << "set key outside right\n";
  gp << "plot \\\n";
  for (std::size_t i = 0; i < kNumErrorKinds; ++i) {
    const std::string name(kind_name(kAllErrorKinds[i]));
    gp << "  'eoc_" << name << ".csv' using 1:2 skip 1 with linespoints title '" << name << "'"
       << (i + 1 < kNumErrorKinds ? ", \\\n" : "\n");
  }
  return gp.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << contents;
}

}  // namespace

void write_study_outputs(const StudyResult& result, const std::filesystem::path& dir,
                         const std::set<std::string>& formats) {
  std::filesystem::create_directories(dir);
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "gnuplot") {
      throw std::invalid_argument("unknown output format '" + f + "'");
    }
  }
  if (formats.contains("csv") || formats.contains("gnuplot")) {
    for (ErrorKind k : kAllErrorKinds) {
      write_file(dir / ("eoc_" + std::string(kind_name(k)) + ".csv"),
                 to_csv(result.table.rows(k)));
    }
  }
  if (formats.contains("json")) {
    nlohmann::json j = to_json(result.table);
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : result.failures) failures.push_back({{"N", f.n}, {"message", f.message}});
    j["failures"] = std::move(failures);
    write_file(dir / "eoc.json", j.dump(2) + "\n");
  }
  if (formats.contains("gnuplot")) {
    write_file(dir / "plot_eoc.gp", gnuplot_script(result.table));
  }
}

SingleRunResult run_single(const SingleRunSpec& spec) {
  std::optional<ManufacturedCase> mc;
  ProblemData problem;
  if (spec.case_label == "decay") {
    problem = decay_problem();
  } else if (spec.case_label == "zero") {
    problem = zero_problem();
  } else {
    mc = case_by_label(spec.case_label);
    problem = problem_from_case(*mc);
  }
  const Scheme scheme(spec.config, std::move(problem));
  std::optional<SpacetimeErrorAccumulator> acc;
  RunOptions options;
  options.sample_times = spec.snapshot_times;
  if (mc) {
    acc.emplace(*mc, scheme.mesh());
    options.on_start = [&](const State& s) { acc->start(s); };
    options.on_step = [&](const State& prev, const State& next) { acc->add_slab(prev, next); };
  }
  SingleRunResult result{run(scheme, options), std::nullopt};
  if (acc) {
    ErrorReport report = acc->report();
    report.delta = scheme.time_grid().delta;
    report.mu = scheme.penalty();
    result.errors = report;
  }
  return result;
}

std::string trajectory_csv(const std::vector<State>& samples) {
  std::string out = "t,x,u,w,c\n";
  for (const State& s : samples) {
    const Mesh1D& mesh = s.u.mesh();
    const std::string t = format_double(s.t);
    for (std::size_t j = 0; j < mesh.num_nodes(); ++j) {
      out += t;
      out += ',';
      out += format_double(mesh.node(j));
      out += ',';
      out += format_double(s.u[j]);
      out += ',';
      out += format_double(s.w[j]);
      out += ',';
      out += format_double(s.c[j]);
      out += '\n';
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<Diagnostics>& rows) {
  std::string out = "m,t,length,bending,c_mass\n";
  for (const Diagnostics& d : rows) {
    out += std::to_string(d.m);
    out += ',';
    out += format_double(d.t);
    out += ',';
    out += format_double(d.length);
    out += ',';
    out += format_double(d.bending);
    out += ',';
    out += format_double(d.c_mass);
    out += '\n';
  }
  return out;
}

}  // namespace elflow
