// protoselect: per-class prototype selection via prize-collecting set cover.
//
// Subcommands:
//   select     pick prototypes for a fixed epsilon and write a model
//   cv         cross-validate the selector over an epsilon grid
//   classify   apply a saved model to query points
//   quantiles  print the epsilon grid implied by the data's distances
//
// Flag parsing lives here; everything else is in the library so tests can
// drive the exact same code path through RunConfig.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "protoselect/cli.hpp"

namespace {

using protoselect::InputKind;
using protoselect::MetricChoice;
using protoselect::OutputFormat;
using protoselect::RunConfig;

// Raw flag values; converted into RunConfig after parsing so every
// subcommand can bind the same holders.
struct RawFlags {
  std::string input_kind = "features";
  std::string metric;
  std::string base_metric = "l2";
  std::string solver = "greedy";
  std::string format;
  std::string kmeans;
};

void add_input_flags(CLI::App* cmd, RunConfig& config, RawFlags& raw,
                     bool with_kmeans) {
  cmd->add_option("--input", config.input_path,
                  "Input CSV: feature table, or square matrix per --input-kind")
      ->required();
  cmd->add_option("--input-kind", raw.input_kind,
                  "How to read --input: features, dissimilarity, or kernel")
      ->check(CLI::IsMember({"features", "dissimilarity", "kernel"}));
  cmd->add_option("--labels-col", config.labels_column,
                  "Label column of a feature table (header name or 0-based index)");
  cmd->add_option("--labels", config.labels_path,
                  "Label file for matrix inputs, one label per line");
  cmd->add_option("--metric", raw.metric,
                  "Working dissimilarity: l1, l2, rank, or precomputed "
                  "(default: l2 for features, precomputed for matrices)")
      ->check(CLI::IsMember({"l1", "l2", "rank", "precomputed"}));
  cmd->add_option("--base-metric", raw.base_metric,
                  "Base distance under --metric rank on features: l1 or l2")
      ->check(CLI::IsMember({"l1", "l2"}));
  if (with_kmeans) {
    cmd->add_option("--kmeans-augment", raw.kmeans,
                    "Add K per-class k-means centroids to the candidate set");
  }
  cmd->add_option("--seed", config.seed, "Random seed (default 0)");
}

void add_output_flags(CLI::App* cmd, RunConfig& config, RawFlags& raw) {
  cmd->add_option("--out", config.out_path,
                  "Output path (default: write to stdout)");
  cmd->add_option("--format", raw.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_solver_flags(CLI::App* cmd, RunConfig& config, RawFlags& raw) {
  cmd->add_option("--lambda", config.lambda_spec,
                  "Per-prototype cost: a number or \"1/n\" (default 1/n)");
  cmd->add_option("--solver", raw.solver, "greedy or lp_rounding")
      ->check(CLI::IsMember({"greedy", "lp_rounding", "lp-rounding"}));
}

// Returns false (after printing a usage diagnostic) when a raw flag value
// cannot be converted.
bool apply_raw_flags(const RawFlags& raw, RunConfig& config) {
  if (raw.input_kind == "features") {
    config.input_kind = InputKind::FeaturesCsv;
  } else if (raw.input_kind == "dissimilarity") {
    config.input_kind = InputKind::DissimilarityCsv;
  } else {
    config.input_kind = InputKind::KernelCsv;
  }

  if (!raw.metric.empty()) {
    if (raw.metric == "l1") config.metric = MetricChoice::L1;
    if (raw.metric == "l2") config.metric = MetricChoice::L2;
    if (raw.metric == "rank") config.metric = MetricChoice::Rank;
    if (raw.metric == "precomputed") config.metric = MetricChoice::Precomputed;
  }
  config.base_metric =
      raw.base_metric == "l1" ? protoselect::Metric::L1 : protoselect::Metric::L2;
  config.solver = raw.solver == "greedy" ? protoselect::SolverKind::Greedy
                                         : protoselect::SolverKind::LpRounding;
  if (!raw.format.empty()) {
    config.format =
        raw.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  }

  if (!raw.kmeans.empty()) {
    char* end = nullptr;
    const unsigned long long k = std::strtoull(raw.kmeans.c_str(), &end, 10);
    if (end != raw.kmeans.c_str() + raw.kmeans.size() || k == 0) {
      std::cerr << "usage error: invalid --kmeans-augment \"" << raw.kmeans
                << "\" (expected a positive integer)\n";
      return false;
    }
    config.kmeans_augment = static_cast<std::size_t>(k);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "protoselect: prototype selection by prize-collecting set cover"};
  app.require_subcommand(1);

  RunConfig config;
  RawFlags raw;

  CLI::App* select = app.add_subcommand(
      "select", "Select prototypes at a fixed epsilon and write a model");
  add_input_flags(select, config, raw, /*with_kmeans=*/true);
  select
      ->add_option("--epsilon", config.epsilon_spec,
                   "Ball radius: a value, or q:P for the P quantile of "
                   "positive training distances")
      ->required();
  add_solver_flags(select, config, raw);
  add_output_flags(select, config, raw);
  select->add_option("--trace-out", config.trace_path,
                     "Write the greedy step trace as CSV to this path");
  select->add_option("--lp-dump", config.lp_dump_path,
                     "Write each class's LP relaxation in text form to this path");

  CLI::App* cv = app.add_subcommand(
      "cv", "Cross-validate the selector over an epsilon grid");
  add_input_flags(cv, config, raw, /*with_kmeans=*/true);
  add_solver_flags(cv, config, raw);
  cv->add_option("--folds", config.folds, "Number of folds (default 10)");
  cv->add_option("--grid", config.grid_levels,
                 "Number of distance-quantile levels in the default grid "
                 "(default 20)");
  cv->add_option("--grid-values", config.grid_values,
                 "Explicit comma-separated epsilon grid, overriding --grid")
      ->delimiter(',');
  add_output_flags(cv, config, raw);

  CLI::App* classify =
      app.add_subcommand("classify", "Apply a saved model to query points");
  classify->add_option("--model", config.model_path, "Model written by select")
      ->required();
  classify
      ->add_option("--queries", config.queries_path,
                   "Query CSV: feature rows for feature models, dissimilarity "
                   "rows over the training candidates for precomputed models")
      ->required();
  classify->add_option("--labels-col", config.labels_column,
                       "Truth column in the queries CSV (feature models)");
  classify->add_option("--labels", config.labels_path,
                       "Truth label file, one per line (precomputed models)");
  add_output_flags(classify, config, raw);

  CLI::App* quantiles = app.add_subcommand(
      "quantiles", "Print the epsilon grid implied by the data's distances");
  add_input_flags(quantiles, config, raw, /*with_kmeans=*/true);
  quantiles->add_option("--grid", config.grid_levels,
                        "Number of quantile levels (default 20)");
  add_output_flags(quantiles, config, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!apply_raw_flags(raw, config)) {
    return 2;
  }
  if (app.got_subcommand(select)) {
    config.command = protoselect::Command::Select;
  } else if (app.got_subcommand(cv)) {
    config.command = protoselect::Command::Cv;
  } else if (app.got_subcommand(classify)) {
    config.command = protoselect::Command::Classify;
  } else {
    config.command = protoselect::Command::Quantiles;
  }

  return protoselect::run(config, std::cout, std::cerr);
}
