#include "elflow/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace elflow {
namespace {

constexpr std::array<std::string_view, kNumErrorKinds> kNames = {
    "u_Linf_L2", "u_Linf_H1", "u_H1_L2", "u_H1_H1",
    "w_Linf_L2", "w_L2_H1",   "c_Linf_L2", "c_L2_H1"};

constexpr std::size_t idx(ErrorKind k) { return static_cast<std::size_t>(k); }

}  // namespace

std::string_view kind_name(ErrorKind kind) noexcept { return kNames[idx(kind)]; }

ErrorKind parse_kind(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllErrorKinds[i];
  }
  throw std::invalid_argument("unknown error kind '" + std::string(name) + "'");
}

SpacetimeErrorAccumulator::SpacetimeErrorAccumulator(ManufacturedCase mc, const Mesh1D& mesh,
                                                     QuadratureOrders orders)
    : mc_(std::move(mc)), mesh_(mesh), space_rule_(orders.space), time_rule_(orders.time) {
  points_.reserve(mesh_.num_elements() * space_rule_.order());
  for (std::size_t e = 0; e < mesh_.num_elements(); ++e) {
    const double x0 = mesh_.node(e);
    const double h = mesh_.element_size(e);
    for (double s : space_rule_.points()) {
      const double x = x0 + s * h;
      points_.push_back({mc_.u_shape(x), mc_.c_shape(x)});
    }
  }
}

void SpacetimeErrorAccumulator::accumulate_level(const State& s) {
  const auto ua = mc_.u_amplitude(s.t);
  const auto ca = mc_.c_amplitude(s.t);
  const std::size_t nq = space_rule_.order();
  double eu = 0.0, eux = 0.0, ew = 0.0, ec = 0.0;
  for (std::size_t e = 0; e < mesh_.num_elements(); ++e) {
    const double h = mesh_.element_size(e);
    const double slope = s.geometry.slope[e];
    for (std::size_t q = 0; q < nq; ++q) {
      const SpatialPoint& p = points_[e * nq + q];
      const double sq = space_rule_.points()[q];
      const double wt = space_rule_.weights()[q] * h;
      const FieldSample f = ManufacturedCase::combine(p.u_shape, ua, p.c_shape, ca);
      const DerivedFields d = derived_fields(f);
      const double du = f.u - s.u.eval_local(e, sq);
      const double dux = f.u_x - slope;
      const double dw = d.w - s.w.eval_local(e, sq);
      const double dc = f.c - s.c.eval_local(e, sq);
      eu += wt * du * du;
      eux += wt * dux * dux;
      ew += wt * dw * dw;
      ec += wt * dc * dc;
    }
  }
  auto bump = [&](ErrorKind k, double v) { values_[idx(k)] = std::max(values_[idx(k)], v); };
  bump(ErrorKind::u_linf_l2, eu);
  bump(ErrorKind::u_linf_h1, eux);
  bump(ErrorKind::w_linf_l2, ew);
  bump(ErrorKind::c_linf_l2, ec);
}

void SpacetimeErrorAccumulator::start(const State& initial) {
  if (!initial.u.mesh().same_as(mesh_)) {
    throw std::invalid_argument("SpacetimeErrorAccumulator: state on a different mesh");
  }
  values_.fill(0.0);
  accumulate_level(initial);
  started_ = true;
}

void SpacetimeErrorAccumulator::add_slab(const State& prev, const State& next) {
  if (!started_) {
    throw std::logic_error("SpacetimeErrorAccumulator: start() must precede add_slab()");
  }
  if (!next.u.mesh().same_as(mesh_) || !prev.u.mesh().same_as(mesh_)) {
    throw std::invalid_argument("SpacetimeErrorAccumulator: state on a different mesh");
  }
  const double t0 = prev.t;
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) {
    throw std::invalid_argument("SpacetimeErrorAccumulator: time levels must increase");
  }
  const std::size_t nq = space_rule_.order();
  const std::size_t ne = mesh_.num_elements();

  for (std::size_t k = 0; k < time_rule_.order(); ++k) {
    const double theta = time_rule_.points()[k];
    const double tw = time_rule_.weights()[k] * dt;
    const double t = t0 + theta * dt;
    const auto ua = mc_.u_amplitude(t);
    const auto ca = mc_.c_amplitude(t);
    double eu = 0.0, eux = 0.0, ew = 0.0, ec = 0.0;
    double eut = 0.0, euxt = 0.0, ewx = 0.0, ecx = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
      const double h = mesh_.element_size(e);
      const double u0a = prev.u[e], u0b = prev.u[e + 1];
      const double u1a = next.u[e], u1b = next.u[e + 1];
      const double w0a = prev.w[e], w0b = prev.w[e + 1];
      const double w1a = next.w[e], w1b = next.w[e + 1];
      const double c0a = prev.c[e], c0b = prev.c[e + 1];
      const double c1a = next.c[e], c1b = next.c[e + 1];
      const double ua_h = (1.0 - theta) * u0a + theta * u1a;
      const double ub_h = (1.0 - theta) * u0b + theta * u1b;
      const double wa_h = (1.0 - theta) * w0a + theta * w1a;
      const double wb_h = (1.0 - theta) * w0b + theta * w1b;
      const double ca_h = (1.0 - theta) * c0a + theta * c1a;
      const double cb_h = (1.0 - theta) * c0b + theta * c1b;
      const double ux_h = (ub_h - ua_h) / h;
      const double wx_h = (wb_h - wa_h) / h;
      const double cx_h = (cb_h - ca_h) / h;
      const double uta = (u1a - u0a) / dt;
      const double utb = (u1b - u0b) / dt;
      const double uxt_h = (utb - uta) / h;
      for (std::size_t q = 0; q < nq; ++q) {
        const SpatialPoint& p = points_[e * nq + q];
        const double s = space_rule_.points()[q];
        const double wt = space_rule_.weights()[q] * h;
        const FieldSample f = ManufacturedCase::combine(p.u_shape, ua, p.c_shape, ca);
        const DerivedFields d = derived_fields(f);
        const double du = f.u - ((1.0 - s) * ua_h + s * ub_h);
        const double dux = f.u_x - ux_h;
        const double dw = d.w - ((1.0 - s) * wa_h + s * wb_h);
        const double dc = f.c - ((1.0 - s) * ca_h + s * cb_h);
        const double dut = f.u_t - ((1.0 - s) * uta + s * utb);
        const double duxt = f.u_xt - uxt_h;
        const double dwx = d.w_x - wx_h;
        const double dcx = f.c_x - cx_h;
        eu += wt * du * du;
        eux += wt * dux * dux;
        ew += wt * dw * dw;
        ec += wt * dc * dc;
        eut += wt * dut * dut;
        euxt += wt * duxt * duxt;
        ewx += wt * dwx * dwx;
        ecx += wt * dcx * dcx;
      }
    }
    auto bump = [&](ErrorKind kind, double v) {
      values_[idx(kind)] = std::max(values_[idx(kind)], v);
    };
    bump(ErrorKind::u_linf_l2, eu);
    bump(ErrorKind::u_linf_h1, eux);
    bump(ErrorKind::w_linf_l2, ew);
    bump(ErrorKind::c_linf_l2, ec);
    values_[idx(ErrorKind::u_h1_l2)] += tw * eut;
    values_[idx(ErrorKind::u_h1_h1)] += tw * euxt;
    values_[idx(ErrorKind::w_l2_h1)] += tw * ewx;
    values_[idx(ErrorKind::c_l2_h1)] += tw * ecx;
  }
  accumulate_level(next);
}

ErrorReport SpacetimeErrorAccumulator::report() const {
  ErrorReport r;
  r.values = values_;
  r.num_elements = mesh_.num_elements();
  return r;
}

ErrorReport spacetime_errors(const ManufacturedCase& mc, const std::vector<State>& trajectory,
                             QuadratureOrders orders) {
  if (trajectory.empty()) {
    throw std::invalid_argument("spacetime_errors: empty trajectory");
  }
  SpacetimeErrorAccumulator acc(mc, trajectory.front().u.mesh(), orders);
  acc.start(trajectory.front());
  for (std::size_t m = 1; m < trajectory.size(); ++m) {
    acc.add_slab(trajectory[m - 1], trajectory[m]);
  }
  ErrorReport r = acc.report();
  if (trajectory.size() > 1) r.delta = trajectory[1].t - trajectory[0].t;
  return r;
}

std::vector<EocRow> eoc(const std::vector<EocSample>& rows) {
  std::vector<EocRow> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EocRow row{rows[i].n, rows[i].error, std::nullopt};
    if (!(rows[i].h > 0.0)) throw std::invalid_argument("eoc: mesh width must be positive");
    if (i > 0) {
      const EocSample& prev = rows[i - 1];
      if (row.n <= prev.n || rows[i].h >= prev.h) {
        throw std::invalid_argument("eoc: N must be strictly increasing");
      }
      row.eoc = std::log(prev.error / row.error) / std::log(prev.h / rows[i].h);
    }
    out.push_back(row);
  }
  return out;
}

EocTable EocTable::from_reports(const std::vector<ErrorReport>& reports, std::string case_label,
                                double c_mu, double r) {
  EocTable table;
  table.case_label = std::move(case_label);
  table.c_mu = c_mu;
  table.r = r;
  for (ErrorKind k : kAllErrorKinds) {
    std::vector<EocSample> rows;
    rows.reserve(reports.size());
    for (const ErrorReport& rep : reports) {
      rows.push_back({rep.num_elements + 1, 1.0 / static_cast<double>(rep.num_elements), rep[k]});
    }
    table.kinds[idx(k)] = eoc(rows);
  }
  return table;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return {buf.data(), res.ptr};
}

std::string to_csv(const std::vector<EocRow>& rows) {
  std::string out = "N,error,eoc\n";
  for (const EocRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.error);
    out += ',';
    if (row.eoc) out += format_double(*row.eoc);
    out += '\n';
  }
  return out;
}

namespace {

double parse_double(std::string_view field) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("parse_eoc_csv: bad number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::vector<EocRow> parse_eoc_csv(std::string_view text) {
  std::vector<EocRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != "N,error,eoc") {
        throw std::invalid_argument("parse_eoc_csv: unexpected header");
      }
      header = false;
      continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw std::invalid_argument("parse_eoc_csv: expected three columns");
    }
    EocRow row;
    std::size_t n = 0;
    const auto nf = line.substr(0, c1);
    const auto res = std::from_chars(nf.data(), nf.data() + nf.size(), n);
    if (res.ec != std::errc{}) {
      throw std::invalid_argument("parse_eoc_csv: bad N");
    }
    row.n = n;
    row.error = parse_double(line.substr(c1 + 1, c2 - c1 - 1));
    const auto eoc_field = line.substr(c2 + 1);
    if (!eoc_field.empty()) row.eoc = parse_double(eoc_field);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const EocTable& table) {
  nlohmann::json j;
  j["case"] = table.case_label;
  j["mu"] = {{"C_mu", table.c_mu}, {"r", table.r}};
  nlohmann::json kinds = nlohmann::json::object();
  for (ErrorKind k : kAllErrorKinds) {
    nlohmann::json rows = nlohmann::json::array();
    for (const EocRow& row : table.rows(k)) {
      rows.push_back({{"N", row.n},
                      {"error", row.error},
                      {"eoc", row.eoc ? nlohmann::json(*row.eoc) : nlohmann::json(nullptr)}});
    }
    kinds[std::string(kind_name(k))] = std::move(rows);
  }
  j["kinds"] = std::move(kinds);
  return j;
}

EocTable eoc_table_from_json(const nlohmann::json& j) {
  EocTable table;
  table.case_label = j.at("case").get<std::string>();
  table.c_mu = j.at("mu").at("C_mu").get<double>();
  table.r = j.at("mu").at("r").get<double>();
  for (const auto& [name, rows] : j.at("kinds").items()) {
    auto& out = table.kinds[idx(parse_kind(name))];
    for (const auto& row : rows) {
      EocRow r;
      r.n = row.at("N").get<std::size_t>();
      r.error = row.at("error").get<double>();
      if (!row.at("eoc").is_null()) r.eoc = row.at("eoc").get<double>();
      out.push_back(r);
    }
  }
  return table;
}

nlohmann::json to_json(const ErrorReport& report) {
  nlohmann::json j;
  j["N"] = report.num_elements + 1;
  j["elements"] = report.num_elements;
  j["delta"] = report.delta;
  j["mu"] = report.mu;
  for (ErrorKind k : kAllErrorKinds) j[std::string(kind_name(k))] = report[k];
  return j;
}

}  // namespace elflow
