#pragma once

#include "protoselect/cover.hpp"

namespace protoselect {

// Improvement from adding `candidate` to `class_id`'s set given the current
// selection: own-class points newly covered, minus wrong-class points in the
// ball, minus lambda. Adding an already-selected candidate is allowed and
// yields no new coverage.
GreedyStep delta_objective(const PrototypeProblem& problem,
                           const std::vector<std::vector<std::size_t>>& current_sets,
                           std::size_t candidate, int class_id);

// Repeatedly adds the (candidate, class) pair with the largest strictly
// positive improvement; ties break to the lowest class id, then the lowest
// candidate index. The returned solution carries the step-by-step trace.
PrototypeSolution solve_greedy(const PrototypeProblem& problem);

}  // namespace protoselect
