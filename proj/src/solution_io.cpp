#include "protoselect/solution_io.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "json.hpp"
#include "protoselect/dissim.hpp"
#include "protoselect/errors.hpp"

namespace protoselect {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormatTag = "protoselect-solution";
constexpr int kFormatVersion = 1;

bool feature_based(const SolutionDocument& doc) {
  return doc.metric == MetricChoice::L1 || doc.metric == MetricChoice::L2 ||
         (doc.metric == MetricChoice::Rank &&
          doc.base_metric != BaseMetric::Precomputed);
}

bool rank_based(const SolutionDocument& doc) {
  return doc.metric == MetricChoice::Rank;
}

// --- JSON field access with diagnostics -----------------------------------

const ordered_json& require_field(const ordered_json& j, const char* key,
                                  const std::string& name) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw DataError(name + ": missing field \"" + std::string(key) + "\"");
  }
  return *it;
}

std::string require_string(const ordered_json& j, const char* key,
                           const std::string& name) {
  const auto& field = require_field(j, key, name);
  if (!field.is_string()) {
    throw DataError(name + ": field \"" + std::string(key) +
                    "\" must be a string");
  }
  return field.get<std::string>();
}

double require_number(const ordered_json& j, const char* key,
                      const std::string& name) {
  const auto& field = require_field(j, key, name);
  if (!field.is_number()) {
    throw DataError(name + ": field \"" + std::string(key) +
                    "\" must be a number");
  }
  return field.get<double>();
}

long long require_integer(const ordered_json& j, const char* key,
                          const std::string& name) {
  const auto& field = require_field(j, key, name);
  if (!field.is_number_integer()) {
    throw DataError(name + ": field \"" + std::string(key) +
                    "\" must be an integer");
  }
  return field.get<long long>();
}

std::vector<double> number_array(const ordered_json& field, const char* key,
                                 const std::string& name) {
  if (!field.is_array()) {
    throw DataError(name + ": field \"" + std::string(key) +
                    "\" must be an array");
  }
  std::vector<double> values;
  values.reserve(field.size());
  for (const auto& entry : field) {
    if (!entry.is_number()) {
      throw DataError(name + ": field \"" + std::string(key) +
                      "\" must contain numbers only");
    }
    values.push_back(entry.get<double>());
  }
  return values;
}

}  // namespace

std::string metric_choice_name(MetricChoice metric) {
  switch (metric) {
    case MetricChoice::L1: return "l1";
    case MetricChoice::L2: return "l2";
    case MetricChoice::Rank: return "rank";
    case MetricChoice::Precomputed: return "precomputed";
  }
  throw InvalidInputError("metric_choice_name: unknown metric");
}

std::string base_metric_name(BaseMetric base) {
  switch (base) {
    case BaseMetric::L1: return "l1";
    case BaseMetric::L2: return "l2";
    case BaseMetric::Precomputed: return "precomputed";
  }
  throw InvalidInputError("base_metric_name: unknown base metric");
}

MetricChoice parse_metric_choice(const std::string& text) {
  if (text == "l1") return MetricChoice::L1;
  if (text == "l2") return MetricChoice::L2;
  if (text == "rank") return MetricChoice::Rank;
  if (text == "precomputed") return MetricChoice::Precomputed;
  throw InvalidInputError("unknown metric \"" + text +
                          "\" (expected l1, l2, rank, or precomputed)");
}

BaseMetric parse_base_metric(const std::string& text) {
  if (text == "l1") return BaseMetric::L1;
  if (text == "l2") return BaseMetric::L2;
  if (text == "precomputed") return BaseMetric::Precomputed;
  throw InvalidInputError("unknown base metric \"" + text +
                          "\" (expected l1, l2, or precomputed)");
}

std::string solution_to_json(const SolutionDocument& doc) {
  ordered_json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["epsilon"] = doc.epsilon;
  j["lambda"] = doc.lambda;
  j["metric"] = metric_choice_name(doc.metric);
  if (rank_based(doc)) {
    j["base_metric"] = base_metric_name(doc.base_metric);
  }
  j["classes"] = doc.classes;
  j["candidate_provenance"] = {
      {"candidates", doc.candidate_count},
      {"training", doc.training_candidates},
      {"kmeans", doc.synthetic_candidates},
  };

  ordered_json per_class = ordered_json::array();
  for (const auto& record : doc.per_class) {
    ordered_json entry;
    entry["class_id"] = record.class_id;
    entry["count"] = record.prototypes.size();
    ordered_json protos = ordered_json::array();
    for (const auto& proto : record.prototypes) {
      ordered_json p;
      p["index"] = proto.index;
      p["synthetic"] = proto.synthetic;
      if (!proto.coordinates.empty()) {
        p["coordinates"] = proto.coordinates;
      }
      if (!proto.reference_distances.empty()) {
        p["reference_distances"] = proto.reference_distances;
      }
      protos.push_back(std::move(p));
    }
    entry["prototypes"] = std::move(protos);
    per_class.push_back(std::move(entry));
  }
  j["per_class"] = std::move(per_class);

  j["xi_total"] = doc.xi_total;
  j["eta_total"] = doc.eta_total;
  j["objective"] = doc.objective;

  if (!doc.trace.empty()) {
    ordered_json trace = ordered_json::array();
    for (const auto& step : doc.trace) {
      ordered_json t;
      t["step"] = step.step;
      t["class"] = step.class_id;
      t["candidate"] = step.candidate;
      t["delta_xi"] = step.delta_xi;
      t["delta_eta"] = step.delta_eta;
      t["delta_obj"] = step.delta_obj;
      t["cumulative_objective"] = step.cumulative_objective;
      trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
  }

  return j.dump(2) + "\n";
}

SolutionDocument parse_solution_json(const std::string& text,
                                     const std::string& name) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(name + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw DataError(name + ": expected a JSON object");
  }
  if (require_string(j, "format", name) != kFormatTag) {
    throw DataError(name + ": not a solution document (field \"format\")");
  }
  if (require_integer(j, "version", name) != kFormatVersion) {
    throw DataError(name + ": unsupported solution document version");
  }

  SolutionDocument doc;
  doc.epsilon = require_number(j, "epsilon", name);
  doc.lambda = require_number(j, "lambda", name);
  if (!std::isfinite(doc.epsilon) || doc.epsilon <= 0.0) {
    throw DataError(name + ": field \"epsilon\" must be a positive number");
  }
  if (!std::isfinite(doc.lambda) || doc.lambda < 0.0) {
    throw DataError(name + ": field \"lambda\" must be nonnegative");
  }

  try {
    doc.metric = parse_metric_choice(require_string(j, "metric", name));
    if (doc.metric == MetricChoice::Rank) {
      doc.base_metric = parse_base_metric(require_string(j, "base_metric", name));
    }
  } catch (const InvalidInputError& e) {
    throw DataError(name + ": " + e.what());
  }

  const auto& classes = require_field(j, "classes", name);
  if (!classes.is_array() || classes.empty()) {
    throw DataError(name + ": field \"classes\" must be a nonempty array");
  }
  for (const auto& entry : classes) {
    if (!entry.is_string()) {
      throw DataError(name + ": field \"classes\" must contain strings");
    }
    doc.classes.push_back(entry.get<std::string>());
  }

  const auto& provenance = require_field(j, "candidate_provenance", name);
  if (!provenance.is_object()) {
    throw DataError(name + ": field \"candidate_provenance\" must be an object");
  }
  doc.candidate_count = static_cast<std::size_t>(
      require_integer(provenance, "candidates", name));
  doc.training_candidates = static_cast<std::size_t>(
      require_integer(provenance, "training", name));
  doc.synthetic_candidates = static_cast<std::size_t>(
      require_integer(provenance, "kmeans", name));

  const auto& per_class = require_field(j, "per_class", name);
  if (!per_class.is_array() || per_class.size() != doc.classes.size()) {
    throw DataError(name + ": field \"per_class\" must list every class");
  }
  const bool needs_coordinates = doc.metric == MetricChoice::L1 ||
                                 doc.metric == MetricChoice::L2 ||
                                 (doc.metric == MetricChoice::Rank &&
                                  doc.base_metric != BaseMetric::Precomputed);
  const bool needs_reference = doc.metric == MetricChoice::Rank;
  std::size_t dims = 0;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    const auto& entry = per_class[c];
    if (!entry.is_object()) {
      throw DataError(name + ": field \"per_class\" must contain objects");
    }
    ClassRecord record;
    record.class_id = require_string(entry, "class_id", name);
    if (record.class_id != doc.classes[c]) {
      throw DataError(name + ": per_class[" + std::to_string(c) +
                      "].class_id disagrees with field \"classes\"");
    }
    const auto count = require_integer(entry, "count", name);
    const auto& protos = require_field(entry, "prototypes", name);
    if (!protos.is_array() ||
        protos.size() != static_cast<std::size_t>(count)) {
      throw DataError(name + ": per_class[" + std::to_string(c) +
                      "]: \"count\" disagrees with \"prototypes\"");
    }
    for (const auto& p : protos) {
      PrototypeRecord proto;
      proto.index = static_cast<std::size_t>(require_integer(p, "index", name));
      if (proto.index >= doc.candidate_count) {
        throw DataError(name + ": prototype index " +
                        std::to_string(proto.index) +
                        " outside the candidate range");
      }
      const auto& synthetic = require_field(p, "synthetic", name);
      if (!synthetic.is_boolean()) {
        throw DataError(name + ": field \"synthetic\" must be a boolean");
      }
      proto.synthetic = synthetic.get<bool>();
      if (needs_coordinates) {
        proto.coordinates = number_array(
            require_field(p, "coordinates", name), "coordinates", name);
        if (proto.coordinates.empty()) {
          throw DataError(name + ": field \"coordinates\" must be nonempty");
        }
        for (const double v : proto.coordinates) {
          if (!std::isfinite(v)) {
            throw DataError(name + ": non-finite prototype coordinate");
          }
        }
        if (dims == 0) {
          dims = proto.coordinates.size();
        } else if (proto.coordinates.size() != dims) {
          throw DataError(name + ": prototypes disagree on dimension");
        }
      }
      if (needs_reference) {
        proto.reference_distances =
            number_array(require_field(p, "reference_distances", name),
                         "reference_distances", name);
        if (proto.reference_distances.empty()) {
          throw DataError(name +
                          ": field \"reference_distances\" must be nonempty");
        }
        for (std::size_t i = 0; i < proto.reference_distances.size(); ++i) {
          const double v = proto.reference_distances[i];
          if (!std::isfinite(v)) {
            throw DataError(name + ": non-finite reference distance");
          }
          if (i > 0 && v < proto.reference_distances[i - 1]) {
            throw DataError(name +
                            ": field \"reference_distances\" must be sorted");
          }
        }
      }
      record.prototypes.push_back(std::move(proto));
    }
    doc.per_class.push_back(std::move(record));
  }

  doc.xi_total = require_integer(j, "xi_total", name);
  doc.eta_total = require_integer(j, "eta_total", name);
  if (doc.xi_total < 0 || doc.eta_total < 0) {
    throw DataError(name + ": slack totals must be nonnegative");
  }
  doc.objective = require_number(j, "objective", name);
  if (!std::isfinite(doc.objective)) {
    throw DataError(name + ": field \"objective\" must be finite");
  }

  if (j.contains("trace")) {
    const auto& trace = j["trace"];
    if (!trace.is_array()) {
      throw DataError(name + ": field \"trace\" must be an array");
    }
    for (const auto& t : trace) {
      TraceRecord record;
      record.step = static_cast<std::size_t>(require_integer(t, "step", name));
      record.class_id = require_string(t, "class", name);
      record.candidate =
          static_cast<std::size_t>(require_integer(t, "candidate", name));
      record.delta_xi = require_integer(t, "delta_xi", name);
      record.delta_eta = require_integer(t, "delta_eta", name);
      record.delta_obj = require_number(t, "delta_obj", name);
      record.cumulative_objective =
          require_number(t, "cumulative_objective", name);
      doc.trace.push_back(std::move(record));
    }
  }

  return doc;
}

std::vector<std::vector<std::size_t>> model_sets(const SolutionDocument& doc) {
  std::vector<std::vector<std::size_t>> sets(doc.per_class.size());
  std::size_t position = 0;
  for (std::size_t c = 0; c < doc.per_class.size(); ++c) {
    for (std::size_t k = 0; k < doc.per_class[c].prototypes.size(); ++k) {
      sets[c].push_back(position++);
    }
  }
  return sets;
}

Matrix model_query_matrix(const SolutionDocument& doc, const Matrix& queries) {
  if (queries.rows() == 0) {
    throw InvalidInputError("classify: no query rows");
  }
  if (!queries.all_finite()) {
    throw InvalidInputError("classify: non-finite query value");
  }

  std::vector<const PrototypeRecord*> protos;
  for (const auto& record : doc.per_class) {
    for (const auto& proto : record.prototypes) {
      protos.push_back(&proto);
    }
  }
  if (protos.empty()) {
    throw InvalidInputError("classify: the model selected no prototypes");
  }

  Matrix base(queries.rows(), protos.size());
  if (feature_based(doc)) {
    const std::size_t dims = protos.front()->coordinates.size();
    if (queries.cols() != dims) {
      throw InvalidInputError(
          "classify: query rows have " + std::to_string(queries.cols()) +
          " columns but the model's prototypes have " + std::to_string(dims) +
          " coordinates");
    }
    Matrix coords(protos.size(), dims);
    for (std::size_t p = 0; p < protos.size(); ++p) {
      for (std::size_t d = 0; d < dims; ++d) {
        coords(p, d) = protos[p]->coordinates[d];
      }
    }
    const Metric metric =
        (doc.metric == MetricChoice::L1 ||
         (doc.metric == MetricChoice::Rank && doc.base_metric == BaseMetric::L1))
            ? Metric::L1
            : Metric::L2;
    base = compute_cross_dissimilarity(FeatureTable::create(queries),
                                       FeatureTable::create(std::move(coords)),
                                       metric)
               .values;
  } else {
    // Precomputed base: query rows are dissimilarities over the original
    // candidate columns; pick out each prototype's column.
    if (queries.cols() != doc.candidate_count) {
      throw InvalidInputError(
          "classify: query rows have " + std::to_string(queries.cols()) +
          " columns but the model was selected over " +
          std::to_string(doc.candidate_count) + " candidates");
    }
    for (std::size_t q = 0; q < queries.rows(); ++q) {
      for (std::size_t p = 0; p < protos.size(); ++p) {
        base(q, p) = queries(q, protos[p]->index);
      }
    }
  }

  if (!rank_based(doc)) {
    return base;
  }

  // Rank transform against the stored per-prototype reference columns: the
  // rank is the number of training points at least as close, counting from 1.
  Matrix ranked(queries.rows(), protos.size());
  for (std::size_t p = 0; p < protos.size(); ++p) {
    const auto& reference = protos[p]->reference_distances;
    for (std::size_t q = 0; q < queries.rows(); ++q) {
      const auto count =
          std::upper_bound(reference.begin(), reference.end(), base(q, p)) -
          reference.begin();
      ranked(q, p) = static_cast<double>(count);
    }
  }
  return ranked;
}

std::vector<Prediction> model_predict(const SolutionDocument& doc,
                                      const Matrix& queries) {
  PrototypeSolution shell;
  shell.sets = model_sets(doc);
  return predict(shell, model_query_matrix(doc, queries));
}

}  // namespace protoselect
