#include "ladmpsap/experiment.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ladmpsap/oracle.hpp"
#include "ladmpsap/rng.hpp"

namespace ladmpsap::bench {

using nlohmann::json;

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "latlrr") return ExperimentKind::LatLrr;
  if (name == "nmc") return ExperimentKind::Nmc;
  if (name == "logistic") return ExperimentKind::Logistic;
  if (name == "divergence") return ExperimentKind::Divergence;
  if (name == "custom") return ExperimentKind::Custom;
  throw std::invalid_argument("unknown experiment '" + name +
                              "' (expected latlrr|nmc|logistic|divergence|custom)");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::LatLrr: return "latlrr";
    case ExperimentKind::Nmc: return "nmc";
    case ExperimentKind::Logistic: return "logistic";
    case ExperimentKind::Divergence: return "divergence";
    case ExperimentKind::Custom: return "custom";
  }
  return "?";
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "table") return ReportFormat::Table;
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected csv|json|table)");
}

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Table: return "table";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "ladmpsap") return Variant::Ladmpsap;
  if (name == "ladmps_fixed_beta") return Variant::LadmpsFixedBeta;
  if (name == "naive_ladm") return Variant::NaiveLadm;
  if (name == "practical") return Variant::Practical;
  if (name == "proximal") return Variant::Proximal;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  if (!j.contains("experiment"))
    throw std::invalid_argument("config is missing the 'experiment' key");
  c.kind = parse_experiment_kind(j.at("experiment").get<std::string>());

  if (j.contains("variants")) {
    for (const auto& v : j.at("variants"))
      c.variants.push_back(parse_variant(v.get<std::string>()));
  }
  c.eps1 = j.value("eps1", c.eps1);
  c.eps2 = j.value("eps2", c.eps2);
  if (!(c.eps1 > 0.0) || !(c.eps2 > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  c.max_iter = j.value("max_iter", c.max_iter);
  c.seed = j.value("seed", c.seed);
  if (j.contains("beta0")) c.beta0 = j.at("beta0").get<double>();
  if (j.contains("rho0")) c.rho0 = j.at("rho0").get<double>();
  if (j.contains("beta_max")) c.beta_max = j.at("beta_max").get<double>();
  if (j.contains("eta")) c.eta = j.at("eta").get<std::vector<double>>();

  if (j.contains("latlrr")) {
    const auto& s = j.at("latlrr");
    c.latlrr.subspaces = s.value("s", c.latlrr.subspaces);
    c.latlrr.points = s.value("p", c.latlrr.points);
    c.latlrr.ambient_dim = s.value("d", c.latlrr.ambient_dim);
    c.latlrr.intrinsic_dim = s.value("r", c.latlrr.intrinsic_dim);
    c.latlrr.mu = s.value("mu", c.latlrr.mu);
  }
  if (j.contains("nmc")) {
    const auto& s = j.at("nmc");
    c.nmc.rows = s.value("rows", c.nmc.rows);
    c.nmc.cols = s.value("cols", c.nmc.cols);
    c.nmc.rank = s.value("rank", c.nmc.rank);
    c.nmc.sample_ratio = s.value("q", c.nmc.sample_ratio);
    c.nmc.noise_std = s.value("noise_std", c.nmc.noise_std);
    c.nmc.mu = s.value("mu", c.nmc.mu);
  }
  if (j.contains("logistic")) {
    const auto& s = j.at("logistic");
    c.logistic.groups = s.value("t", c.logistic.groups);
    c.logistic.samples = s.value("s", c.logistic.samples);
    c.logistic.active_groups = s.value("q", c.logistic.active_groups);
    c.logistic.mu = s.value("mu", c.logistic.mu);
  }
  if (j.contains("divergence")) {
    const auto& s = j.at("divergence");
    c.divergence.n = s.value("n", c.divergence.n);
    c.divergence.m = s.value("m", c.divergence.m);
    c.divergence.d = s.value("d", c.divergence.d);
  }
  if (j.contains("custom")) {
    const auto& s = j.at("custom");
    c.custom.blocks = s.value("n", c.custom.blocks);
    c.custom.dim = s.value("dim", c.custom.dim);
    c.custom.rows = s.value("rows", c.custom.rows);
  }
  if (j.contains("output")) {
    const auto& s = j.at("output");
    c.out_path = s.value("path", c.out_path);
    if (s.contains("format"))
      c.format = parse_report_format(s.at("format").get<std::string>());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Prepared {
  Problem problem;
  SolverConfig base;                       // shared settings per variant
  std::vector<std::string> err_labels;     // per reported block
  std::vector<Block> reference;            // per reported block, may be empty
  bool fa_on_first_block = false;
  std::optional<Block> fa_truth;
};

SolverConfig base_config(const ExperimentConfig& c) {
  SolverConfig s;
  s.eps1 = c.eps1;
  s.schedule.eps2 = c.eps2;
  s.max_iter = c.max_iter;
  if (c.beta0) s.schedule.beta0 = *c.beta0;
  if (c.rho0) s.schedule.rho0 = *c.rho0;
  if (c.beta_max) {
    if (*c.beta_max > 0.0)
      s.schedule.beta_max = *c.beta_max;
    else
      s.schedule.beta_max = std::nullopt;
  }
  if (c.eta) s.eta = c.eta;
  return s;
}

double largest_singular_value(const Block& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

Prepared prepare(const ExperimentConfig& c) {
  Prepared p;
  p.base = base_config(c);

  switch (c.kind) {
    case ExperimentKind::LatLrr: {
      auto spec = c.latlrr;
      spec.seed = c.seed;
      const Block X = problems::gen_latent_lrr_data(spec);
      p.problem = problems::build_latent_lrr(X, spec.mu);
      if (!c.beta0) {
        const double smax = largest_singular_value(X);
        const double mind = std::min(X.rows(), X.cols());
        p.base.schedule.beta0 = smax * mind * c.eps2;
      }
      p.err_labels = {"z", "l", "e"};
      const auto ref = oracle::long_run_reference(p.problem, p.base);
      p.reference = ref.x;
      break;
    }
    case ExperimentKind::Nmc: {
      auto spec = c.nmc;
      spec.seed = c.seed;
      const auto data = problems::gen_nmc_data(spec);
      p.problem = problems::build_nmc(data.b_obs, data.omega,
                                      {spec.rows, spec.cols}, spec.mu);
      p.err_labels = {"x"};
      p.reference = {data.truth};
      p.fa_on_first_block = true;
      p.fa_truth = data.truth;
      break;
    }
    case ExperimentKind::Logistic: {
      auto spec = c.logistic;
      spec.seed = c.seed;
      const auto data = problems::gen_group_logistic_data(spec);
      const auto groups = problems::chain_groups(spec.groups);
      p.problem = problems::build_group_logistic(data.X, data.y, groups, spec.mu);
      if (!c.beta0) p.base.schedule.beta0 = 1.0;
      if (!c.rho0) p.base.schedule.rho0 = 5.0;
      if (!c.eta) {
        const double s2 = p.problem.blocks[0].map.op_norm().value;
        p.base.eta = std::vector<double>{2.01 * s2 * s2, 2.01};
      }
      p.err_labels = {"wbar", "z"};
      SolverConfig ref_cfg = p.base;
      ref_cfg.variant = Variant::Proximal;
      const auto ref = oracle::long_run_reference(p.problem, ref_cfg);
      p.reference = ref.x;
      break;
    }
    case ExperimentKind::Divergence: {
      p.problem = problems::build_parallel_bp(c.divergence.n, c.divergence.m,
                                              c.divergence.d, c.seed);
      p.err_labels.resize(c.divergence.n);
      for (int i = 0; i < c.divergence.n; ++i)
        p.err_labels[i] = "x" + std::to_string(i + 1);
      const auto ref = oracle::long_run_reference(p.problem, p.base);
      p.reference = ref.x;
      break;
    }
    case ExperimentKind::Custom: {
      Rng rng(c.seed);
      Problem prob;
      for (int i = 0; i < c.custom.blocks; ++i) {
        prob.blocks.push_back(
            {Term::quadratic(rng.gaussian_matrix(c.custom.dim, 1), 1.0),
             LinearMap::dense(rng.gaussian_matrix(c.custom.rows, c.custom.dim)),
             Block::Zero(c.custom.dim, 1), std::nullopt});
      }
      prob.rhs = rng.gaussian_matrix(c.custom.rows, 1);
      p.problem = std::move(prob);
      p.err_labels.resize(c.custom.blocks);
      for (int i = 0; i < c.custom.blocks; ++i)
        p.err_labels[i] = "x" + std::to_string(i + 1);
      const auto ref = oracle::eq_qp_solve(p.problem);
      p.reference = ref.x;
      break;
    }
  }
  return p;
}

std::vector<Variant> default_variants(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::LatLrr:
      return {Variant::Ladmpsap, Variant::LadmpsFixedBeta};
    case ExperimentKind::Nmc:
      return {Variant::Practical};
    case ExperimentKind::Logistic:
      return {Variant::Proximal};
    case ExperimentKind::Divergence:
      return {Variant::NaiveLadm, Variant::Ladmpsap};
    case ExperimentKind::Custom:
      return {Variant::Ladmpsap};
  }
  return {};
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  const Prepared p = prepare(config);
  const auto variants =
      config.variants.empty() ? default_variants(config.kind) : config.variants;
  if (variants.empty())
    throw std::invalid_argument("experiment requests no variants");

  std::vector<ResultRow> rows;
  for (Variant v : variants) {
    ResultRow row;
    row.experiment = to_string(config.kind);
    row.variant = to_string(v);
    row.err_labels = p.err_labels;

    SolverConfig cfg = p.base;
    cfg.variant = v;
    const auto start = std::chrono::steady_clock::now();
    try {
      const SolveReport rep = solve(p.problem, cfg);
      row.status = to_string(rep.status);
      row.iterations = rep.iterations;
      for (std::size_t i = 0; i < p.err_labels.size(); ++i) {
        const Block& ref = p.reference[i];
        const double denom = ref.norm() > 0.0 ? ref.norm() : 1.0;
        row.rel_err.push_back((rep.x[i] - ref).norm() / denom);
      }
      if (p.fa_on_first_block)
        row.fa = problems::fa_metric(rep.x[0], *p.fa_truth);
    } catch (const std::exception& e) {
      row.status = "error";
      row.rel_err.assign(p.err_labels.size(), 0.0);
      std::cerr << "variant " << row.variant << " failed: " << e.what() << "\n";
    }
    row.time_s = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "experiment,variant,status,iterations,time_s";
  for (const auto& l : rows.front().err_labels) os << ",err_" << l;
  if (rows.front().fa) os << ",fa";
  os << "\n";
  for (const auto& r : rows) {
    os << r.experiment << "," << r.variant << "," << r.status << ","
       << r.iterations << "," << fmt6(r.time_s);
    for (double e : r.rel_err) os << "," << fmt6(e);
    if (r.fa) os << "," << fmt6(*r.fa);
    os << "\n";
  }
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& os) {
  json out;
  out["rows"] = json::array();
  for (const auto& r : rows) {
    json jr;
    jr["experiment"] = r.experiment;
    jr["variant"] = r.variant;
    jr["status"] = r.status;
    jr["iterations"] = r.iterations;
    jr["time_s"] = fmt6(r.time_s);
    json errs = json::object();
    for (std::size_t i = 0; i < r.err_labels.size(); ++i)
      errs[r.err_labels[i]] = fmt6(r.rel_err[i]);
    jr["rel_err"] = errs;
    if (r.fa) jr["fa"] = fmt6(*r.fa);
    out["rows"].push_back(jr);
  }
  os << out.dump(2) << "\n";
}

void emit_table(const std::vector<ResultRow>& rows, std::ostream& os) {
  std::vector<std::string> header = {"variant", "status", "#iter", "time(s)"};
  for (const auto& l : rows.front().err_labels) header.push_back("err_" + l);
  if (rows.front().fa) header.push_back("FA");

  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    std::vector<std::string> c = {r.variant, r.status,
                                  std::to_string(r.iterations), fmt6(r.time_s)};
    for (double e : r.rel_err) c.push_back(fmt6(e));
    if (r.fa) c.push_back(fmt6(*r.fa));
    cells.push_back(std::move(c));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    width[j] = header[j].size();
    for (const auto& c : cells) width[j] = std::max(width[j], c[j].size());
  }
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      os << c[j] << std::string(width[j] - c[j].size() + 2, ' ');
    }
    os << "\n";
  };
  os << "# " << rows.front().experiment << "\n";
  line(header);
  for (const auto& c : cells) line(c);
}

}  // namespace

void emit_report(const std::vector<ResultRow>& rows, ReportFormat format,
                 std::ostream& os) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  switch (format) {
    case ReportFormat::Csv: emit_csv(rows, os); break;
    case ReportFormat::Json: emit_json(rows, os); break;
    case ReportFormat::Table: emit_table(rows, os); break;
  }
}

void emit_report(const std::vector<ResultRow>& rows, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  emit_report(rows, format, out);
}

std::vector<ResultRow> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("parse_csv: empty input");

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };

  const auto header = split(line);
  std::vector<std::string> err_labels;
  bool has_fa = false;
  for (std::size_t j = 5; j < header.size(); ++j) {
    if (header[j] == "fa")
      has_fa = true;
    else if (header[j].rfind("err_", 0) == 0)
      err_labels.push_back(header[j].substr(4));
    else
      throw std::invalid_argument("parse_csv: unexpected column " + header[j]);
  }

  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("parse_csv: ragged row");
    ResultRow r;
    r.experiment = cells[0];
    r.variant = cells[1];
    r.status = cells[2];
    r.iterations = std::stoi(cells[3]);
    r.time_s = std::stod(cells[4]);
    r.err_labels = err_labels;
    for (std::size_t j = 0; j < err_labels.size(); ++j)
      r.rel_err.push_back(std::stod(cells[5 + j]));
    if (has_fa) r.fa = std::stod(cells[5 + err_labels.size()]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ladmpsap::bench
