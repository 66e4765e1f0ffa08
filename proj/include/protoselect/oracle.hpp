#pragma once

#include "protoselect/cover.hpp"

namespace protoselect {

struct OracleResult {
  double optimal_objective = 0.0;
  long long slack_units = 0;      // uncovered + miscovered at the optimum
  long long prototype_count = 0;
  std::vector<std::vector<std::size_t>> optimal_sets;  // lexicographically smallest optimum
  long long enumerated = 0;       // candidate subsets scored
};

// Exhaustive reference solver: enumerates all 2^m candidate subsets per class
// (the per-class instances are independent). Intended for tests; refuses
// instances beyond max_candidates.
OracleResult solve_exact(const PrototypeProblem& problem, std::size_t max_candidates = 16);

}  // namespace protoselect
