#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ladmpsap/problems.hpp"
#include "ladmpsap/solver.hpp"

namespace ladmpsap::bench {

enum class ExperimentKind { LatLrr, Nmc, Logistic, Divergence, Custom };
enum class ReportFormat { Csv, Json, Table };

ExperimentKind parse_experiment_kind(const std::string& name);
ReportFormat parse_report_format(const std::string& name);
Variant parse_variant(const std::string& name);
std::string to_string(ExperimentKind k);
std::string to_string(ReportFormat f);

struct CustomSpec {
  int blocks = 3;
  Index dim = 6;     // per block
  Index rows = 4;    // constraint rows
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Divergence;
  std::vector<Variant> variants;
  double eps1 = 1e-3;
  double eps2 = 1e-4;
  int max_iter = 2000;
  std::uint64_t seed = 0;

  // optional overrides of the per-experiment recipe
  std::optional<double> beta0;
  std::optional<double> rho0;
  std::optional<double> beta_max;  // <= 0 selects the unbounded schedule
  std::optional<std::vector<double>> eta;

  problems::LatentLrrSpec latlrr{};
  problems::NmcSpec nmc{};
  problems::GroupLogisticSpec logistic{};
  struct {
    int n = 5;
    Index m = 40;
    Index d = 20;
  } divergence;
  CustomSpec custom{};

  std::string out_path;  // empty: stdout
  ReportFormat format = ReportFormat::Table;
};

/// Reads a JSON experiment description; throws std::invalid_argument with a
/// usage message on malformed input. The schema is documented in the README.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

struct ResultRow {
  std::string experiment;
  std::string variant;
  std::string status;
  int iterations = 0;
  double time_s = 0.0;
  std::vector<std::string> err_labels;
  std::vector<double> rel_err;  // vs. the experiment's reference, per block
  std::optional<double> fa;
};

/// Builds the problem, obtains the reference, and runs every requested
/// variant. A variant that fails still yields a row carrying its status.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

void emit_report(const std::vector<ResultRow>& rows, ReportFormat format,
                 std::ostream& os);
void emit_report(const std::vector<ResultRow>& rows, ReportFormat format,
                 const std::string& path);

/// Inverse of the csv writer; used to check that reports round-trip.
std::vector<ResultRow> parse_csv(std::istream& is);

}  // namespace ladmpsap::bench
