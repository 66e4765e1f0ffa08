#include "protoselect/cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "protoselect/errors.hpp"

namespace protoselect {

LabeledDataset LabeledDataset::create(std::vector<int> labels) {
  if (labels.empty()) {
    throw InvalidInputError("dataset must contain at least one point");
  }
  const int max_label = *std::max_element(labels.begin(), labels.end());
  return create(std::move(labels), max_label + 1);
}

LabeledDataset LabeledDataset::create(std::vector<int> labels, int num_classes) {
  if (labels.empty()) {
    throw InvalidInputError("dataset must contain at least one point");
  }
  if (num_classes < 1) {
    throw InvalidInputError("dataset needs at least one class");
  }
  LabeledDataset ds;
  ds.num_classes = num_classes;
  ds.class_index.resize(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c >= num_classes) {
      throw InvalidInputError("label out of range at point " + std::to_string(i));
    }
    ds.class_index[static_cast<std::size_t>(c)].push_back(i);
  }
  for (int c = 0; c < num_classes; ++c) {
    if (ds.class_index[static_cast<std::size_t>(c)].empty()) {
      throw InvalidInputError("class " + std::to_string(c) + " has no points");
    }
  }
  ds.labels = std::move(labels);
  return ds;
}

double assemble_objective(long long slack_units, long long prototypes, double lambda) {
  return static_cast<double>(slack_units) + lambda * static_cast<double>(prototypes);
}

BallIncidence build_incidence(const DissimilarityMatrix& d, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInputError("epsilon must be positive and finite");
  }
  BallIncidence inc;
  inc.n_points = d.points();
  inc.m_candidates = d.candidates();
  inc.epsilon = epsilon;
  inc.covers.resize(inc.m_candidates);
  inc.covered_by.resize(inc.n_points);
  for (std::size_t i = 0; i < inc.n_points; ++i) {
    for (std::size_t j = 0; j < inc.m_candidates; ++j) {
      if (d.values(i, j) < epsilon) {  // strictly inside the ball
        inc.covers[j].push_back(i);
        inc.covered_by[i].push_back(j);
      }
    }
  }
  return inc;
}

std::vector<PcscSubproblem> decompose(const PrototypeProblem& problem) {
  if (problem.lambda < 0.0 || !std::isfinite(problem.lambda)) {
    throw InvalidInputError("lambda must be nonnegative and finite");
  }
  if (problem.dataset.size() != problem.incidence.n_points) {
    throw InvalidInputError("dataset and incidence disagree on the number of points");
  }
  const std::size_t m = problem.incidence.m_candidates;
  std::vector<PcscSubproblem> subs;
  subs.reserve(static_cast<std::size_t>(problem.dataset.num_classes));
  for (int c = 0; c < problem.dataset.num_classes; ++c) {
    PcscSubproblem sub;
    sub.class_id = c;
    sub.lambda = problem.lambda;
    sub.target_points = problem.dataset.class_index[static_cast<std::size_t>(c)];
    sub.costs.resize(m);
    sub.wrong_cover_counts.resize(m);
    sub.covers_in_class.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      long long wrong = 0;
      for (const std::size_t i : problem.incidence.covers[j]) {
        if (problem.dataset.labels[i] == c) {
          sub.covers_in_class[j].push_back(i);
        } else {
          ++wrong;
        }
      }
      sub.wrong_cover_counts[j] = wrong;
      sub.costs[j] = problem.lambda + static_cast<double>(wrong);
    }
    subs.push_back(std::move(sub));
  }
  return subs;
}

PrototypeSolution evaluate_solution(const PrototypeProblem& problem,
                                    const std::vector<std::vector<std::size_t>>& sets) {
  const std::size_t n = problem.incidence.n_points;
  const std::size_t m = problem.incidence.m_candidates;
  const int num_classes = problem.dataset.num_classes;
  if (problem.dataset.size() != n) {
    throw InvalidInputError("dataset and incidence disagree on the number of points");
  }
  if (sets.size() != static_cast<std::size_t>(num_classes)) {
    throw InvalidInputError("expected one prototype set per class");
  }

  PrototypeSolution sol;
  sol.sets.resize(sets.size());
  sol.uncovered.assign(n, 1);
  sol.miscover_counts.assign(n, 0);
  sol.per_class_objective.resize(sets.size());

  std::vector<long long> class_slack(sets.size(), 0);
  std::vector<char> chosen(m);
  for (std::size_t c = 0; c < sets.size(); ++c) {
    std::fill(chosen.begin(), chosen.end(), 0);
    for (const std::size_t j : sets[c]) {
      if (j >= m) {
        throw InvalidInputError("prototype index " + std::to_string(j) +
                                " out of range for class " + std::to_string(c));
      }
      if (chosen[j]) {
        continue;  // index sets: a repeated index is the same prototype
      }
      chosen[j] = 1;
      sol.sets[c].push_back(j);
      for (const std::size_t i : problem.incidence.covers[j]) {
        if (problem.dataset.labels[i] == static_cast<int>(c)) {
          sol.uncovered[i] = 0;
        } else {
          ++sol.miscover_counts[i];
          ++class_slack[c];  // this class pays for covering someone else's point
        }
      }
    }
    sol.prototype_total += static_cast<long long>(sol.sets[c].size());
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(problem.dataset.labels[i]);
    if (sol.uncovered[i]) {
      ++sol.uncovered_total;
      ++class_slack[c];
    }
    sol.miscovered_total += sol.miscover_counts[i];
  }

  for (std::size_t c = 0; c < sets.size(); ++c) {
    sol.per_class_objective[c] = assemble_objective(
        class_slack[c], static_cast<long long>(sol.sets[c].size()), problem.lambda);
  }
  sol.objective = assemble_objective(sol.uncovered_total + sol.miscovered_total,
                                     sol.prototype_total, problem.lambda);
  return sol;
}

bool decomposition_identity(const PrototypeProblem& problem,
                            const std::vector<std::vector<std::size_t>>& sets) {
  const PrototypeSolution sol = evaluate_solution(problem, sets);
  double per_class_sum = 0.0;
  for (const double v : sol.per_class_objective) {
    per_class_sum += v;
  }
  return std::fabs(sol.objective - per_class_sum) <= 1e-9;
}

}  // namespace protoselect
