#pragma once

#include <cstdint>
#include <vector>

#include "protoselect/dissim.hpp"

namespace protoselect {

// Labeled training points; class ids are 0..num_classes-1 and every class is
// populated.
struct LabeledDataset {
  std::vector<int> labels;
  int num_classes = 0;
  std::vector<std::vector<std::size_t>> class_index;  // ascending point ids per class

  std::size_t size() const { return labels.size(); }

  // num_classes inferred as max label + 1.
  static LabeledDataset create(std::vector<int> labels);
  // Explicit class count; every id in [0, num_classes) must appear.
  static LabeledDataset create(std::vector<int> labels, int num_classes);
};

// Which points fall strictly within epsilon of each candidate, both ways
// around.
struct BallIncidence {
  std::size_t n_points = 0;
  std::size_t m_candidates = 0;
  double epsilon = 0.0;
  std::vector<std::vector<std::size_t>> covers;      // candidate -> points, ascending
  std::vector<std::vector<std::size_t>> covered_by;  // point -> candidates, ascending
};

// The joint selection problem: pick per-class prototype sets trading coverage
// of own-class points against wrongly covered points and a per-prototype cost.
struct PrototypeProblem {
  LabeledDataset dataset;
  BallIncidence incidence;
  double lambda = 0.0;  // cost of each selected prototype

  std::size_t candidate_count() const { return incidence.m_candidates; }
};

// One class's prize-collecting set cover instance. cost[j] folds the
// per-prototype charge and the candidate's wrong-class coverage together, so
// the subproblems are independent.
struct PcscSubproblem {
  int class_id = 0;
  double lambda = 0.0;
  std::vector<std::size_t> target_points;                  // this class's points
  std::vector<double> costs;                               // lambda + wrong_cover_counts
  std::vector<long long> wrong_cover_counts;               // integer part of costs
  std::vector<std::vector<std::size_t>> covers_in_class;   // candidate -> targets covered
};

// One greedy addition, kept for the optimization trace.
struct GreedyStep {
  std::size_t candidate = 0;
  int class_id = 0;
  long long newly_covered = 0;  // own-class points covered for the first time
  long long miscovered = 0;     // wrong-class points inside the candidate's ball
  double improvement = 0.0;     // newly_covered - miscovered - lambda
};

struct PrototypeSolution {
  std::vector<std::vector<std::size_t>> sets;  // per class, in selection order
  std::vector<std::uint8_t> uncovered;         // point has no own-class prototype in range
  std::vector<long long> miscover_counts;      // wrong-class prototypes covering the point
  long long uncovered_total = 0;
  long long miscovered_total = 0;
  long long prototype_total = 0;
  double objective = 0.0;
  std::vector<double> per_class_objective;
  std::vector<GreedyStep> trace;               // filled by the greedy solver only
};

// Slack counts and prototype counts are integers; lambda enters once, here.
// Using this single assembly everywhere makes objective comparisons between
// independently computed solutions exact.
double assemble_objective(long long slack_units, long long prototypes, double lambda);

BallIncidence build_incidence(const DissimilarityMatrix& d, double epsilon);

std::vector<PcscSubproblem> decompose(const PrototypeProblem& problem);

// Scores an arbitrary selection. Duplicate indices inside a class are
// collapsed; order is preserved.
PrototypeSolution evaluate_solution(const PrototypeProblem& problem,
                                    const std::vector<std::vector<std::size_t>>& sets);

// Joint objective == sum of per-class objectives (integer components compared
// exactly, assembled doubles within 1e-9).
bool decomposition_identity(const PrototypeProblem& problem,
                            const std::vector<std::vector<std::size_t>>& sets);

}  // namespace protoselect
