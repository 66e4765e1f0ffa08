#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "protoselect/select.hpp"
#include "protoselect/solution_io.hpp"

namespace protoselect {

enum class Command { Select, Cv, Classify, Quantiles };
enum class InputKind { FeaturesCsv, DissimilarityCsv, KernelCsv };
enum class OutputFormat { Json, Csv };

// One fully specified command invocation. The binary fills this from flags;
// tests construct it directly.
struct RunConfig {
  Command command = Command::Select;

  // Input data. Feature tables carry their labels in a column named by
  // labels_column (header name or 0-based index); matrix inputs take a
  // separate label file, one label per line.
  std::string input_path;
  InputKind input_kind = InputKind::FeaturesCsv;
  std::string labels_column;
  std::string labels_path;

  // Working dissimilarity. Unset metric defaults to l2 for feature input
  // and precomputed for matrix input. base_metric applies when the metric
  // is rank over features.
  std::optional<MetricChoice> metric;
  Metric base_metric = Metric::L2;
  std::optional<std::size_t> kmeans_augment;

  // Selection parameters. epsilon_spec is a plain value or "q:P" for the
  // P quantile of positive working distances; lambda_spec is a value or
  // the literal "1/n".
  std::string epsilon_spec;
  std::string lambda_spec = "1/n";
  SolverKind solver = SolverKind::Greedy;
  std::uint64_t seed = 0;

  // Cross-validation and quantile grids. Explicit grid_values override the
  // quantile-level grid.
  std::size_t folds = 10;
  std::size_t grid_levels = 20;
  std::vector<double> grid_values;

  // Classification.
  std::string model_path;
  std::string queries_path;

  // Outputs. Empty out_path streams to stdout. Format defaults to json for
  // select and csv for the other commands.
  std::string out_path;
  std::optional<OutputFormat> format;
  std::string trace_path;    // greedy select: CSV step trace
  std::string lp_dump_path;  // lp_rounding select: per-class LP text
};

// Executes one command, writing the requested artifacts; stdout-bound
// output goes to `out`. Throws ConfigError for contradictory or malformed
// settings, DataError/InvalidInputError for bad input data, SolverError
// for optimization failures.
void execute(const RunConfig& config, std::ostream& out);

// execute() wrapped in the exit-code contract: 0 success, 2 usage error,
// 3 data error, 4 solver failure. Diagnostics go to `diag`.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Original label strings mapped to internal ids 0..L-1. A label set that is
// entirely numeric orders numerically, so "2" and "10" sort the way a
// reader of the input file expects; otherwise ordering is lexicographic.
struct LabelMapping {
  std::vector<std::string> classes;  // internal id -> original label
  std::vector<int> ids;              // per input row
};
LabelMapping map_labels(const std::vector<std::string>& raw);

// "1/n" resolves against the training size; anything else must parse as a
// finite nonnegative number.
double parse_lambda_spec(const std::string& spec, std::size_t n);

struct EpsilonSpec {
  bool quantile = false;
  double value = 0.0;  // the epsilon itself, or the quantile level
};
EpsilonSpec parse_epsilon_spec(const std::string& spec);

}  // namespace protoselect
