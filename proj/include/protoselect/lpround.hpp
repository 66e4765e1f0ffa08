#pragma once

#include <cstdint>

#include "protoselect/cover.hpp"
#include "protoselect/simplex.hpp"

namespace protoselect {

// Fractional per-class relaxation solution.
struct LpSolution {
  std::vector<double> candidate_weights;  // one per candidate, in [0, 1]
  std::vector<double> slack_weights;      // one per target point, in [0, 1]
  double opt_value = 0.0;
  std::size_t iterations = 0;
};

struct RoundingOutcome {
  std::vector<std::size_t> selected;   // candidate indices, ascending
  std::vector<std::size_t> abstained;  // target points left to their slack penalty
  std::size_t rounds_used = 0;         // rounds inside the successful attempt
  std::size_t attempts = 0;            // 1 = first attempt succeeded
  double objective = 0.0;              // cost(selected) + |abstained|
  double bound = 0.0;                  // 2 ln|targets| * opt_value (0 for one target)
};

struct ClassLpReport {
  int class_id = 0;
  std::size_t target_count = 0;
  double opt_lp = 0.0;
  RoundingOutcome rounding;
};

struct LpRoundingResult {
  PrototypeSolution solution;
  std::vector<ClassLpReport> per_class;
};

// Covering relaxation of one class's instance: a variable per candidate
// (cost lambda + wrong-class coverage) plus a slack variable per target
// point (cost 1); every target must be covered or slacked; all variables in
// [0, 1].
LinearProgramDense build_lp(const PcscSubproblem& sub);

// Solves the relaxation with the dense simplex and splits the solution back
// into candidate and slack weights (clamped into their bounds).
LpSolution solve_lp(const LinearProgramDense& lp, const PcscSubproblem& sub);

// Repeats up to ceil(2 ln |targets|) rounds (at least one), each drawing
// every candidate and slack independently with its fractional weight as the
// probability and accumulating the hits. Stops at the first round where the
// accumulated selection covers every target (or its slack is set) AND its
// cost is within 2 ln|targets| of the fractional optimum; the cost check is
// skipped for single-target classes, where the factor would be zero. A full
// failed pass reseeds deterministically from (seed, attempt) and tries
// again, up to max_attempts.
RoundingOutcome randomized_round(const LpSolution& lps, const PcscSubproblem& sub,
                                 std::uint64_t seed, std::size_t max_attempts = 64);

// Full pipeline: decompose, relax, round each class with a seed derived from
// (master seed, class id), and score the assembled selection.
LpRoundingResult solve_lp_rounding(const PrototypeProblem& problem, std::uint64_t seed);

}  // namespace protoselect
