#include "protoselect/greedy.hpp"

#include <string>

#include "protoselect/errors.hpp"

namespace protoselect {

GreedyStep delta_objective(const PrototypeProblem& problem,
                           const std::vector<std::vector<std::size_t>>& current_sets,
                           std::size_t candidate, int class_id) {
  const std::size_t n = problem.incidence.n_points;
  const std::size_t m = problem.incidence.m_candidates;
  if (candidate >= m) {
    throw InvalidInputError("candidate index out of range");
  }
  if (class_id < 0 || class_id >= problem.dataset.num_classes) {
    throw InvalidInputError("class id out of range");
  }
  if (current_sets.size() != static_cast<std::size_t>(problem.dataset.num_classes)) {
    throw InvalidInputError("expected one prototype set per class");
  }

  // Own-class points already covered by the class's current prototypes.
  std::vector<char> covered(n, 0);
  for (const std::size_t j : current_sets[static_cast<std::size_t>(class_id)]) {
    if (j >= m) {
      throw InvalidInputError("current selection holds an out-of-range candidate");
    }
    for (const std::size_t i : problem.incidence.covers[j]) {
      covered[i] = 1;
    }
  }

  GreedyStep step;
  step.candidate = candidate;
  step.class_id = class_id;
  for (const std::size_t i : problem.incidence.covers[candidate]) {
    if (problem.dataset.labels[i] == class_id) {
      if (!covered[i]) {
        ++step.newly_covered;
      }
    } else {
      ++step.miscovered;
    }
  }
  step.improvement =
      static_cast<double>(step.newly_covered - step.miscovered) - problem.lambda;
  return step;
}

PrototypeSolution solve_greedy(const PrototypeProblem& problem) {
  const std::size_t n = problem.incidence.n_points;
  const std::size_t m = problem.incidence.m_candidates;
  const auto num_classes = static_cast<std::size_t>(problem.dataset.num_classes);
  const std::vector<PcscSubproblem> subs = decompose(problem);

  // gain[c][j]: own-class points candidate j would newly cover for class c.
  // Kept incrementally: when a point gets covered, every candidate whose ball
  // holds it loses one unit of gain for that class. The wrong-class count
  // never changes, so the scan below works from integers only; lambda enters
  // when testing the stop condition.
  std::vector<std::vector<long long>> gain(num_classes, std::vector<long long>(m, 0));
  for (std::size_t c = 0; c < num_classes; ++c) {
    for (std::size_t j = 0; j < m; ++j) {
      gain[c][j] = static_cast<long long>(subs[c].covers_in_class[j].size());
    }
  }

  std::vector<char> covered(n, 0);  // by a prototype of the point's own class
  std::vector<std::vector<std::size_t>> sets(num_classes);
  std::vector<GreedyStep> trace;

  for (;;) {
    long long best_value = 0;
    bool found = false;
    std::size_t best_c = 0;
    std::size_t best_j = 0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      const std::vector<long long>& gain_c = gain[c];
      const std::vector<long long>& wrong_c = subs[c].wrong_cover_counts;
      for (std::size_t j = 0; j < m; ++j) {
        const long long value = gain_c[j] - wrong_c[j];
        // Strict > keeps the first (lowest class, lowest candidate) maximizer.
        if (!found || value > best_value) {
          best_value = value;
          best_c = c;
          best_j = j;
          found = true;
        }
      }
    }
    if (!found || !(static_cast<double>(best_value) - problem.lambda > 0.0)) {
      break;
    }

    GreedyStep step;
    step.candidate = best_j;
    step.class_id = static_cast<int>(best_c);
    step.newly_covered = gain[best_c][best_j];
    step.miscovered = subs[best_c].wrong_cover_counts[best_j];
    step.improvement = static_cast<double>(best_value) - problem.lambda;
    trace.push_back(step);
    sets[best_c].push_back(best_j);

    for (const std::size_t i : subs[best_c].covers_in_class[best_j]) {
      if (!covered[i]) {
        covered[i] = 1;
        for (const std::size_t j : problem.incidence.covered_by[i]) {
          --gain[best_c][j];
        }
      }
    }
  }

  PrototypeSolution sol = evaluate_solution(problem, sets);
  sol.trace = std::move(trace);
  return sol;
}

}  // namespace protoselect
