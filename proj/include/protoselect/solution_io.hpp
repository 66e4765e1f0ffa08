#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "protoselect/classify.hpp"
#include "protoselect/matrix.hpp"

namespace protoselect {

// Working dissimilarity of a run. Rank is a transform over a base
// dissimilarity, which is itself either a feature metric or a user matrix.
enum class MetricChoice { L1, L2, Rank, Precomputed };
enum class BaseMetric { L1, L2, Precomputed };

std::string metric_choice_name(MetricChoice metric);
std::string base_metric_name(BaseMetric base);
MetricChoice parse_metric_choice(const std::string& text);
BaseMetric parse_base_metric(const std::string& text);

// One selected prototype, carrying whatever classification later needs:
//   - feature runs embed the prototype's coordinates;
//   - rank runs additionally embed the sorted base distances from every
//     training point to the prototype, so query ranks can be recomputed;
//   - precomputed runs store only the candidate index, and classification
//     expects query rows over the same candidate columns.
struct PrototypeRecord {
  std::size_t index = 0;  // candidate column at selection time
  bool synthetic = false;
  std::vector<double> coordinates;          // empty unless a feature run
  std::vector<double> reference_distances;  // empty unless a rank run
};

struct ClassRecord {
  std::string class_id;  // original label, as it appeared in the input
  std::vector<PrototypeRecord> prototypes;
};

struct TraceRecord {
  std::size_t step = 0;
  std::string class_id;
  std::size_t candidate = 0;
  long long delta_xi = 0;
  long long delta_eta = 0;
  double delta_obj = 0.0;
  double cumulative_objective = 0.0;
};

// Everything `select` learned, in a form `classify` can reload.
struct SolutionDocument {
  double epsilon = 0.0;
  double lambda = 0.0;
  MetricChoice metric = MetricChoice::L2;
  BaseMetric base_metric = BaseMetric::L2;  // meaningful when metric is Rank
  std::vector<std::string> classes;         // original labels, model order
  std::size_t candidate_count = 0;
  std::size_t training_candidates = 0;      // provenance: real points
  std::size_t synthetic_candidates = 0;     // provenance: k-means centroids
  std::vector<ClassRecord> per_class;
  long long xi_total = 0;
  long long eta_total = 0;
  double objective = 0.0;
  std::vector<TraceRecord> trace;  // empty unless the greedy solver ran
};

// JSON serialization. Field order is fixed so identical runs produce
// byte-identical documents.
std::string solution_to_json(const SolutionDocument& doc);

// Parses and validates a solution document; throws DataError with the
// offending field on malformed input. `name` labels diagnostics.
SolutionDocument parse_solution_json(const std::string& text,
                                     const std::string& name);

// Prototype sets over flattened prototype positions (class by class, in
// document order), matching the columns of model_query_matrix.
std::vector<std::vector<std::size_t>> model_sets(const SolutionDocument& doc);

// Working query-to-prototype dissimilarities. `queries` holds feature rows
// for feature runs, or base dissimilarity rows over the original candidate
// columns for precomputed runs.
Matrix model_query_matrix(const SolutionDocument& doc, const Matrix& queries);

// Full reload-and-predict path used by the classify command.
std::vector<Prediction> model_predict(const SolutionDocument& doc,
                                      const Matrix& queries);

}  // namespace protoselect
