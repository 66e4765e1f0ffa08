#include "protoselect/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "protoselect/csv.hpp"
#include "protoselect/errors.hpp"
#include "protoselect/greedy.hpp"
#include "protoselect/lpround.hpp"
#include "protoselect/rng.hpp"

namespace protoselect {

namespace {

using ordered_json = nlohmann::ordered_json;

// Seed streams, kept apart so unrelated random decisions never share a
// generator state: full-data candidate builds take derive_seed(seed, 1, 0)
// (cross_validate gives fold f derive_seed(seed, 1, f)), and a full-data
// lp_rounding solve takes derive_seed(seed, 2, 0).
constexpr std::uint64_t kStreamAugment = 1;
constexpr std::uint64_t kStreamSolver = 2;

std::string solver_name(SolverKind solver) {
  return solver == SolverKind::Greedy ? "greedy" : "lp_rounding";
}

OutputFormat resolve_format(const RunConfig& config) {
  if (config.format) return *config.format;
  return config.command == Command::Select ? OutputFormat::Json
                                           : OutputFormat::Csv;
}

// Everything the pipeline needs from the input flags: a ready
// DissimilaritySource, the labeled points, and the original label strings.
struct LoadedInput {
  DissimilaritySource source;
  LabeledDataset dataset;
  std::vector<std::string> classes;
  MetricChoice metric = MetricChoice::L2;
  BaseMetric base = BaseMetric::L2;
  bool real_labels = false;
};

void resolve_metric(const RunConfig& config, bool feature_input,
                    LoadedInput& out) {
  const MetricChoice metric =
      config.metric ? *config.metric
                    : (feature_input ? MetricChoice::L2
                                     : MetricChoice::Precomputed);
  if (feature_input) {
    if (metric == MetricChoice::Precomputed) {
      throw ConfigError(
          "metric \"precomputed\" requires a dissimilarity or kernel matrix "
          "input");
    }
    const bool l1 = metric == MetricChoice::L1 ||
                    (metric == MetricChoice::Rank &&
                     config.base_metric == Metric::L1);
    out.base = l1 ? BaseMetric::L1 : BaseMetric::L2;
  } else {
    if (metric == MetricChoice::L1 || metric == MetricChoice::L2) {
      throw ConfigError(
          "matrix input carries its own dissimilarities; the metric must be "
          "precomputed or rank");
    }
    out.base = BaseMetric::Precomputed;
  }
  out.metric = metric;
}

std::size_t resolve_column(const CsvTable& table, const std::string& spec) {
  if (table.has_header()) {
    std::size_t found = 0;
    std::size_t matches = 0;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (table.header[c] == spec) {
        found = c;
        ++matches;
      }
    }
    if (matches > 1) {
      throw DataError(table.name + ": column name \"" + spec +
                      "\" is ambiguous");
    }
    if (matches == 1) return found;
  }
  const bool digits =
      !spec.empty() &&
      std::all_of(spec.begin(), spec.end(),
                  [](unsigned char ch) { return std::isdigit(ch) != 0; });
  if (digits) {
    const std::size_t index = std::strtoull(spec.c_str(), nullptr, 10);
    if (index < table.columns) return index;
    throw DataError(table.name + ": column index " + spec +
                    " out of range (the file has " +
                    std::to_string(table.columns) + " columns)");
  }
  if (table.has_header()) {
    throw DataError(table.name + ": no column named \"" + spec + "\"");
  }
  throw DataError(table.name +
                  ": the file has no header row, so the label column must be "
                  "a 0-based index, not \"" +
                  spec + "\"");
}

// Parses the whole table as numbers, optionally splitting off one column of
// raw label strings.
Matrix numeric_cells(const CsvTable& table,
                     const std::optional<std::size_t>& label_col,
                     std::vector<std::string>* labels_out) {
  const std::size_t width = table.columns - (label_col ? 1 : 0);
  Matrix values(table.rows(), width);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    std::size_t w = 0;
    for (std::size_t c = 0; c < table.columns; ++c) {
      if (label_col && c == *label_col) {
        labels_out->push_back(table.cells[r][c]);
        continue;
      }
      values(r, w++) = parse_number(table.cells[r][c], table.name,
                                    table.line_of(r), c + 1);
    }
  }
  return values;
}

void attach_labels(const std::vector<std::string>& raw, LoadedInput& out) {
  const LabelMapping mapping = map_labels(raw);
  out.classes = mapping.classes;
  out.dataset = LabeledDataset::create(mapping.ids);
  out.real_labels = true;
}

LoadedInput load_input(const RunConfig& config, bool require_labels) {
  if (config.input_path.empty()) {
    throw ConfigError("--input is required");
  }
  LoadedInput out;
  const bool feature_input = config.input_kind == InputKind::FeaturesCsv;
  resolve_metric(config, feature_input, out);

  if (feature_input) {
    if (!config.labels_path.empty()) {
      throw ConfigError(
          "--labels names a label file for matrix inputs; feature tables "
          "take --labels-col");
    }
    const CsvTable table = read_csv(config.input_path);
    std::optional<std::size_t> label_col;
    if (!config.labels_column.empty()) {
      label_col = resolve_column(table, config.labels_column);
    } else if (require_labels) {
      throw ConfigError("--labels-col is required for feature input");
    }
    if (label_col && table.columns < 2) {
      throw DataError(table.name +
                      ": no feature columns besides the label column");
    }
    std::vector<std::string> raw_labels;
    Matrix values = numeric_cells(table, label_col, &raw_labels);
    try {
      out.source.features = FeatureTable::create(std::move(values));
    } catch (const InvalidInputError& e) {
      throw DataError(table.name + ": " + std::string(e.what()));
    }
    if (label_col) {
      attach_labels(raw_labels, out);
    } else {
      out.dataset =
          LabeledDataset::create(std::vector<int>(table.rows(), 0));
    }
    out.source.metric = out.base == BaseMetric::L1 ? Metric::L1 : Metric::L2;
    out.source.use_rank = out.metric == MetricChoice::Rank;
    if (config.kmeans_augment) {
      if (*config.kmeans_augment == 0) {
        throw ConfigError("--kmeans-augment must be positive");
      }
      if (!out.real_labels) {
        throw ConfigError("k-means augmentation needs a label column");
      }
      out.source.kmeans_k = config.kmeans_augment;
    }
    return out;
  }

  if (!config.labels_column.empty()) {
    throw ConfigError(
        "--labels-col names a feature-table column; matrix inputs take "
        "--labels");
  }
  if (config.kmeans_augment) {
    throw ConfigError("k-means augmentation requires feature input");
  }
  const CsvTable table = read_csv(config.input_path);
  if (table.rows() != table.columns) {
    throw DataError(table.name + ": expected a square matrix, got " +
                    std::to_string(table.rows()) + "x" +
                    std::to_string(table.columns));
  }
  Matrix values = numeric_cells(table, std::nullopt, nullptr);
  try {
    if (config.input_kind == InputKind::KernelCsv) {
      out.source.matrix = kernel_to_distance(KernelMatrix::create(std::move(values)));
    } else {
      out.source.matrix = DissimilarityMatrix::create(std::move(values));
    }
  } catch (const InvalidInputError& e) {
    throw DataError(table.name + ": " + std::string(e.what()));
  }
  out.source.use_rank = out.metric == MetricChoice::Rank;

  if (!config.labels_path.empty()) {
    const std::vector<std::string> raw = read_label_lines(config.labels_path);
    if (raw.size() != table.rows()) {
      throw DataError(config.labels_path + ": " + std::to_string(raw.size()) +
                      " labels for " + std::to_string(table.rows()) +
                      " points");
    }
    attach_labels(raw, out);
  } else if (require_labels) {
    throw ConfigError("--labels is required for matrix input");
  } else {
    out.dataset = LabeledDataset::create(std::vector<int>(table.rows(), 0));
  }
  return out;
}

CandidateBuild build_full(const LoadedInput& input, std::uint64_t seed) {
  std::vector<std::size_t> all(input.dataset.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return build_candidates(input.source, input.dataset, all, {},
                          derive_seed(seed, kStreamAugment, 0));
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(config.out_path, text);
  }
}

// --- select ----------------------------------------------------------------

SolutionDocument make_document(const LoadedInput& input,
                               const CandidateBuild& build,
                               const PrototypeSolution& solution,
                               double epsilon, double lambda) {
  SolutionDocument doc;
  doc.epsilon = epsilon;
  doc.lambda = lambda;
  doc.metric = input.metric;
  doc.base_metric = input.base;
  doc.classes = input.classes;
  doc.candidate_count = build.train.candidates();
  for (const auto flag : build.synthetic) {
    if (flag) {
      ++doc.synthetic_candidates;
    } else {
      ++doc.training_candidates;
    }
  }

  // Rank runs embed, per prototype, the sorted base distances from every
  // training point, so classify can recompute query ranks later.
  std::optional<Matrix> base_columns;
  if (input.metric == MetricChoice::Rank) {
    if (input.source.features) {
      base_columns = compute_cross_dissimilarity(*input.source.features,
                                                 *build.candidate_features,
                                                 input.source.metric)
                         .values;
    } else {
      base_columns = input.source.matrix->values;
    }
  }

  for (std::size_t c = 0; c < solution.sets.size(); ++c) {
    ClassRecord record;
    record.class_id = doc.classes[c];
    for (const std::size_t j : solution.sets[c]) {
      PrototypeRecord proto;
      proto.index = j;
      proto.synthetic = build.synthetic[j] != 0;
      if (build.candidate_features) {
        const auto row = build.candidate_features->values.row(j);
        proto.coordinates.assign(row.begin(), row.end());
      }
      if (base_columns) {
        proto.reference_distances.reserve(base_columns->rows());
        for (std::size_t i = 0; i < base_columns->rows(); ++i) {
          proto.reference_distances.push_back((*base_columns)(i, j));
        }
        std::sort(proto.reference_distances.begin(),
                  proto.reference_distances.end());
      }
      record.prototypes.push_back(std::move(proto));
    }
    doc.per_class.push_back(std::move(record));
  }

  doc.xi_total = solution.uncovered_total;
  doc.eta_total = solution.miscovered_total;
  doc.objective = solution.objective;

  // The cumulative objective is reassembled from running integer slack and
  // prototype counts, so the last trace row equals the final objective
  // bit for bit.
  long long slack = static_cast<long long>(input.dataset.size());
  long long prototypes = 0;
  for (std::size_t s = 0; s < solution.trace.size(); ++s) {
    const GreedyStep& step = solution.trace[s];
    slack += step.miscovered - step.newly_covered;
    prototypes += 1;
    TraceRecord record;
    record.step = s + 1;
    record.class_id = doc.classes[static_cast<std::size_t>(step.class_id)];
    record.candidate = step.candidate;
    record.delta_xi = step.newly_covered;
    record.delta_eta = step.miscovered;
    record.delta_obj = step.improvement;
    record.cumulative_objective = assemble_objective(slack, prototypes, lambda);
    doc.trace.push_back(std::move(record));
  }
  return doc;
}

std::string trace_csv(const SolutionDocument& doc) {
  std::string text =
      "step,class,candidate,delta_xi,delta_eta,delta_obj,"
      "cumulative_objective\n";
  for (const TraceRecord& t : doc.trace) {
    text += std::to_string(t.step) + "," + t.class_id + "," +
            std::to_string(t.candidate) + "," + std::to_string(t.delta_xi) +
            "," + std::to_string(t.delta_eta) + "," +
            format_double(t.delta_obj) + "," +
            format_double(t.cumulative_objective) + "\n";
  }
  return text;
}

void run_select(const RunConfig& config, std::ostream& out) {
  if (config.epsilon_spec.empty()) {
    throw ConfigError("--epsilon is required for select");
  }
  const EpsilonSpec espec = parse_epsilon_spec(config.epsilon_spec);
  if (config.solver == SolverKind::Greedy && !config.lp_dump_path.empty()) {
    throw ConfigError("--lp-dump requires --solver lp_rounding");
  }
  if (config.solver == SolverKind::LpRounding && !config.trace_path.empty()) {
    throw ConfigError("--trace-out requires --solver greedy");
  }
  if (resolve_format(config) == OutputFormat::Csv) {
    throw ConfigError("select writes a JSON solution document; drop --format csv");
  }

  const LoadedInput input = load_input(config, /*require_labels=*/true);
  const CandidateBuild build = build_full(input, config.seed);
  const double epsilon =
      espec.quantile
          ? distance_quantiles(build.train, {espec.value})[0]
          : espec.value;
  const double lambda = parse_lambda_spec(config.lambda_spec, input.dataset.size());
  const PrototypeProblem problem{input.dataset,
                                 build_incidence(build.train, epsilon), lambda};

  if (!config.lp_dump_path.empty()) {
    std::string text;
    for (const PcscSubproblem& sub : decompose(problem)) {
      text += "# class " + input.classes[static_cast<std::size_t>(sub.class_id)] +
              "\n" + build_lp(sub).to_text() + "\n";
    }
    write_file_atomic(config.lp_dump_path, text);
  }

  const PrototypeSolution solution =
      config.solver == SolverKind::Greedy
          ? solve_greedy(problem)
          : solve_lp_rounding(problem,
                              derive_seed(config.seed, kStreamSolver, 0))
                .solution;

  const SolutionDocument doc =
      make_document(input, build, solution, epsilon, lambda);
  emit(config, out, solution_to_json(doc));
  if (!config.trace_path.empty()) {
    write_file_atomic(config.trace_path, trace_csv(doc));
  }
}

// --- cv ----------------------------------------------------------------------

std::string cv_csv(const CvReport& report) {
  std::string text = "epsilon,mean_error,se,mean_prototypes\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    text += format_double(report.grid[i]) + "," +
            format_double(report.mean_error[i]) + "," +
            format_double(report.std_error[i]) + "," +
            format_double(report.mean_prototypes[i]) + "\n";
  }
  return text;
}

std::string cv_json(const LoadedInput& input, const RunConfig& config,
                    const CvReport& report) {
  ordered_json j;
  j["format"] = "protoselect-cv";
  j["version"] = 1;
  j["metric"] = metric_choice_name(input.metric);
  if (input.metric == MetricChoice::Rank) {
    j["base_metric"] = base_metric_name(input.base);
  }
  j["lambda"] = parse_lambda_spec(config.lambda_spec, input.dataset.size());
  j["folds"] = report.folds;
  j["solver"] = solver_name(config.solver);
  j["seed"] = config.seed;
  j["grid"] = report.grid;
  j["mean_error"] = report.mean_error;
  j["std_error"] = report.std_error;
  j["mean_prototypes"] = report.mean_prototypes;
  j["fold_errors"] = report.fold_errors;
  j["chosen_epsilon"] = report.chosen_epsilon;
  return j.dump(2) + "\n";
}

void run_cv(const RunConfig& config, std::ostream& out) {
  if (!config.epsilon_spec.empty()) {
    throw ConfigError("cv chooses epsilon from the grid; --epsilon applies to select");
  }
  if (!config.trace_path.empty() || !config.lp_dump_path.empty()) {
    throw ConfigError("--trace-out and --lp-dump apply to select");
  }
  const LoadedInput input = load_input(config, /*require_labels=*/true);
  const double lambda = parse_lambda_spec(config.lambda_spec, input.dataset.size());

  std::vector<double> grid = config.grid_values;
  if (grid.empty()) {
    if (config.grid_levels < 2) {
      throw ConfigError("--grid must be at least 2");
    }
    grid = default_quantile_grid(build_full(input, config.seed).train,
                                 config.grid_levels);
  }

  const CvReport report = cross_validate(input.dataset, input.source, grid,
                                         config.folds, lambda, config.solver,
                                         config.seed);
  if (resolve_format(config) == OutputFormat::Json) {
    emit(config, out, cv_json(input, config, report));
  } else {
    emit(config, out, cv_csv(report));
  }
}

// --- classify ----------------------------------------------------------------

bool feature_model(const SolutionDocument& doc) {
  return doc.metric == MetricChoice::L1 || doc.metric == MetricChoice::L2 ||
         (doc.metric == MetricChoice::Rank &&
          doc.base_metric != BaseMetric::Precomputed);
}

std::string predictions_csv(const std::vector<std::string>& predicted,
                            const std::vector<std::string>& truth,
                            const std::vector<std::string>& classes,
                            const std::vector<std::vector<long long>>& confusion,
                            double error_rate) {
  std::string text = truth.empty() ? "row,predicted\n" : "row,predicted,truth\n";
  for (std::size_t q = 0; q < predicted.size(); ++q) {
    text += std::to_string(q) + "," + predicted[q];
    if (!truth.empty()) {
      text += "," + truth[q];
    }
    text += "\n";
  }
  if (!truth.empty()) {
    text += "# error_rate," + format_double(error_rate) + "\n";
    text += "# confusion,truth\\predicted";
    for (const auto& name : classes) {
      text += "," + name;
    }
    text += "\n";
    for (std::size_t t = 0; t < classes.size(); ++t) {
      text += "# confusion," + classes[t];
      for (std::size_t p = 0; p < classes.size(); ++p) {
        text += "," + std::to_string(confusion[t][p]);
      }
      text += "\n";
    }
  }
  return text;
}

std::string predictions_json(const std::vector<std::string>& predicted,
                             const std::vector<std::string>& truth,
                             const std::vector<std::string>& classes,
                             const std::vector<std::vector<long long>>& confusion,
                             double error_rate) {
  ordered_json j;
  j["format"] = "protoselect-predictions";
  j["version"] = 1;
  j["classes"] = classes;
  ordered_json rows = ordered_json::array();
  for (std::size_t q = 0; q < predicted.size(); ++q) {
    ordered_json row;
    row["row"] = q;
    row["predicted"] = predicted[q];
    if (!truth.empty()) {
      row["truth"] = truth[q];
    }
    rows.push_back(std::move(row));
  }
  j["predictions"] = std::move(rows);
  if (!truth.empty()) {
    j["error_rate"] = error_rate;
    j["confusion"] = confusion;
  }
  return j.dump(2) + "\n";
}

void run_classify(const RunConfig& config, std::ostream& out) {
  if (config.model_path.empty()) {
    throw ConfigError("--model is required for classify");
  }
  if (config.queries_path.empty()) {
    throw ConfigError("--queries is required for classify");
  }
  const SolutionDocument doc =
      parse_solution_json(read_file(config.model_path), config.model_path);

  const CsvTable table = read_csv(config.queries_path);
  std::vector<std::string> truth_raw;
  Matrix queries;
  if (feature_model(doc)) {
    if (!config.labels_path.empty()) {
      throw ConfigError(
          "feature models take an optional truth column via --labels-col, "
          "not --labels");
    }
    std::optional<std::size_t> truth_col;
    if (!config.labels_column.empty()) {
      truth_col = resolve_column(table, config.labels_column);
    }
    queries = numeric_cells(table, truth_col, &truth_raw);
  } else {
    if (!config.labels_column.empty()) {
      throw ConfigError(
          "this model classifies dissimilarity rows; supply truth labels "
          "with --labels");
    }
    queries = numeric_cells(table, std::nullopt, nullptr);
    if (!config.labels_path.empty()) {
      truth_raw = read_label_lines(config.labels_path);
      if (truth_raw.size() != queries.rows()) {
        throw DataError(config.labels_path + ": " +
                        std::to_string(truth_raw.size()) + " labels for " +
                        std::to_string(queries.rows()) + " query rows");
      }
    }
  }

  const std::vector<Prediction> predictions = model_predict(doc, queries);
  std::vector<std::string> predicted;
  predicted.reserve(predictions.size());
  for (const Prediction& p : predictions) {
    predicted.push_back(doc.classes[static_cast<std::size_t>(p.label)]);
  }

  std::vector<std::vector<long long>> confusion;
  double error_rate = 0.0;
  if (!truth_raw.empty()) {
    std::unordered_map<std::string, std::size_t> class_of;
    for (std::size_t c = 0; c < doc.classes.size(); ++c) {
      class_of[doc.classes[c]] = c;
    }
    confusion.assign(doc.classes.size(),
                     std::vector<long long>(doc.classes.size(), 0));
    long long wrong = 0;
    for (std::size_t q = 0; q < truth_raw.size(); ++q) {
      const auto it = class_of.find(truth_raw[q]);
      if (it == class_of.end()) {
        throw DataError("truth label \"" + truth_raw[q] +
                        "\" is not one of the model's classes");
      }
      const std::size_t t = it->second;
      const std::size_t p = static_cast<std::size_t>(predictions[q].label);
      ++confusion[t][p];
      if (t != p) ++wrong;
    }
    error_rate =
        static_cast<double>(wrong) / static_cast<double>(truth_raw.size());
  }

  if (resolve_format(config) == OutputFormat::Json) {
    emit(config, out,
         predictions_json(predicted, truth_raw, doc.classes, confusion,
                          error_rate));
  } else {
    emit(config, out,
         predictions_csv(predicted, truth_raw, doc.classes, confusion,
                         error_rate));
  }
}

// --- quantiles ----------------------------------------------------------------

void run_quantiles(const RunConfig& config, std::ostream& out) {
  const bool require_labels = config.kmeans_augment.has_value();
  const LoadedInput input = load_input(config, require_labels);
  if (config.grid_levels < 2) {
    throw ConfigError("--grid must be at least 2");
  }
  const CandidateBuild build = build_full(input, config.seed);

  std::vector<double> probs(config.grid_levels);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = 0.5 * static_cast<double>(i) /
               static_cast<double>(probs.size() - 1);
  }
  const std::vector<double> values = distance_quantiles(build.train, probs);

  if (resolve_format(config) == OutputFormat::Json) {
    ordered_json j;
    j["format"] = "protoselect-quantiles";
    j["version"] = 1;
    j["levels"] = config.grid_levels;
    j["probs"] = probs;
    j["values"] = values;
    emit(config, out, j.dump(2) + "\n");
  } else {
    std::string text = "prob,epsilon\n";
    for (std::size_t i = 0; i < probs.size(); ++i) {
      text += format_double(probs[i]) + "," + format_double(values[i]) + "\n";
    }
    emit(config, out, text);
  }
}

}  // namespace

LabelMapping map_labels(const std::vector<std::string>& raw) {
  if (raw.empty()) {
    throw InvalidInputError("map_labels: no labels");
  }
  std::vector<std::string> distinct(raw);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  const bool numeric =
      std::all_of(distinct.begin(), distinct.end(),
                  [](const std::string& s) { return parses_as_number(s); });
  if (numeric) {
    std::sort(distinct.begin(), distinct.end(),
              [](const std::string& a, const std::string& b) {
                const double va = std::strtod(a.c_str(), nullptr);
                const double vb = std::strtod(b.c_str(), nullptr);
                if (va != vb) return va < vb;
                return a < b;
              });
  }

  std::unordered_map<std::string, int> id_of;
  for (std::size_t c = 0; c < distinct.size(); ++c) {
    id_of[distinct[c]] = static_cast<int>(c);
  }
  LabelMapping mapping;
  mapping.classes = std::move(distinct);
  mapping.ids.reserve(raw.size());
  for (const std::string& label : raw) {
    mapping.ids.push_back(id_of.at(label));
  }
  return mapping;
}

double parse_lambda_spec(const std::string& spec, std::size_t n) {
  if (spec == "1/n") {
    return 1.0 / static_cast<double>(n);
  }
  const char* begin = spec.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (spec.empty() || end != begin + spec.size() || !std::isfinite(value) ||
      value < 0.0) {
    throw ConfigError("invalid --lambda \"" + spec +
                      "\" (expected a nonnegative number or \"1/n\")");
  }
  return value;
}

EpsilonSpec parse_epsilon_spec(const std::string& spec) {
  EpsilonSpec result;
  std::string body = spec;
  if (spec.rfind("q:", 0) == 0) {
    result.quantile = true;
    body = spec.substr(2);
  }
  const char* begin = body.c_str();
  char* end = nullptr;
  result.value = std::strtod(begin, &end);
  const bool parsed = !body.empty() && end == begin + body.size() &&
                      std::isfinite(result.value);
  if (result.quantile) {
    if (!parsed || result.value < 0.0 || result.value > 1.0) {
      throw ConfigError("invalid --epsilon \"" + spec +
                        "\" (quantile level must be in [0, 1])");
    }
  } else if (!parsed || result.value <= 0.0) {
    throw ConfigError("invalid --epsilon \"" + spec +
                      "\" (expected a positive number or \"q:P\")");
  }
  return result;
}

void execute(const RunConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::Select:
      run_select(config, out);
      return;
    case Command::Cv:
      run_cv(config, out);
      return;
    case Command::Classify:
      run_classify(config, out);
      return;
    case Command::Quantiles:
      run_quantiles(config, out);
      return;
  }
  throw ConfigError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    execute(config, out);
    return 0;
  } catch (const ConfigError& e) {
    diag << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    diag << "data error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInputError& e) {
    diag << "data error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    diag << "solver failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace protoselect
