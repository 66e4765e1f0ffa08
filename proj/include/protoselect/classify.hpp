#pragma once

#include <vector>

#include "protoselect/cover.hpp"

namespace protoselect {

// Nearest-prototype decision for one query point.
struct Prediction {
  int label = 0;
  std::vector<double> per_class_min;  // min dissimilarity to each class's set;
                                      // +infinity for classes with no prototypes
};

struct ClassifierReport {
  double error_rate = 0.0;
  std::vector<std::vector<long long>> confusion;  // [true label][predicted label]
};

// Assigns each query to the class owning its nearest prototype; ties go to
// the lowest class id. Queries arrive as dissimilarity rows against the
// candidate set (queries x candidates), so the rule is metric-agnostic.
// Rejects a selection with no prototypes at all.
std::vector<Prediction> predict(const PrototypeSolution& solution,
                                const Matrix& query_dissims);

// Misclassified fraction plus the full count matrix on a labeled test batch.
ClassifierReport evaluate_classifier(const PrototypeSolution& solution,
                                     const Matrix& test_dissims,
                                     const std::vector<int>& test_labels);

}  // namespace protoselect
