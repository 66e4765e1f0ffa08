#include "protoselect/classify.hpp"

#include <limits>
#include <string>

#include "protoselect/errors.hpp"

namespace protoselect {

std::vector<Prediction> predict(const PrototypeSolution& solution,
                                const Matrix& query_dissims) {
  const std::size_t num_classes = solution.sets.size();
  if (num_classes == 0) {
    throw InvalidInputError("predict: solution has no classes");
  }
  bool any = false;
  for (const auto& set : solution.sets) {
    any = any || !set.empty();
    for (const std::size_t j : set) {
      if (j >= query_dissims.cols()) {
        throw InvalidInputError("predict: prototype index " + std::to_string(j) +
                                " outside the query dissimilarity columns");
      }
    }
  }
  if (!any) {
    throw InvalidInputError("predict: every prototype set is empty");
  }
  if (!query_dissims.all_finite()) {
    throw InvalidInputError("predict: non-finite query dissimilarity");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Prediction> predictions;
  predictions.reserve(query_dissims.rows());
  for (std::size_t q = 0; q < query_dissims.rows(); ++q) {
    Prediction pred;
    pred.per_class_min.assign(num_classes, kInf);
    for (std::size_t c = 0; c < num_classes; ++c) {
      for (const std::size_t j : solution.sets[c]) {
        pred.per_class_min[c] = std::min(pred.per_class_min[c], query_dissims(q, j));
      }
    }
    pred.label = 0;
    for (std::size_t c = 1; c < num_classes; ++c) {
      if (pred.per_class_min[c] < pred.per_class_min[static_cast<std::size_t>(pred.label)]) {
        pred.label = static_cast<int>(c);
      }
    }
    predictions.push_back(std::move(pred));
  }
  return predictions;
}

ClassifierReport evaluate_classifier(const PrototypeSolution& solution,
                                     const Matrix& test_dissims,
                                     const std::vector<int>& test_labels) {
  if (test_dissims.rows() == 0) {
    throw InvalidInputError("evaluate_classifier: empty test batch");
  }
  if (test_dissims.rows() != test_labels.size()) {
    throw InvalidInputError("evaluate_classifier: " + std::to_string(test_labels.size()) +
                            " labels for " + std::to_string(test_dissims.rows()) +
                            " test rows");
  }
  const int num_classes = static_cast<int>(solution.sets.size());
  for (const int label : test_labels) {
    if (label < 0 || label >= num_classes) {
      throw InvalidInputError("evaluate_classifier: label " + std::to_string(label) +
                              " outside the trained range [0, " +
                              std::to_string(num_classes) + ")");
    }
  }

  const std::vector<Prediction> predictions = predict(solution, test_dissims);
  ClassifierReport report;
  report.confusion.assign(static_cast<std::size_t>(num_classes),
                          std::vector<long long>(static_cast<std::size_t>(num_classes), 0));
  long long wrong = 0;
  for (std::size_t q = 0; q < predictions.size(); ++q) {
    const int truth = test_labels[q];
    const int guess = predictions[q].label;
    ++report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(guess)];
    if (truth != guess) {
      ++wrong;
    }
  }
  report.error_rate =
      static_cast<double>(wrong) / static_cast<double>(predictions.size());
  return report;
}

}  // namespace protoselect
