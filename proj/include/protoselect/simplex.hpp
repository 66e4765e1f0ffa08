#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "protoselect/matrix.hpp"

namespace protoselect {

enum class Relation { LessEqual, Equal, GreaterEqual };

// Dense LP in row form: minimize objective . x subject to one relation per
// constraint row and box bounds lower <= x <= upper (upper may be +inf,
// lower must be finite).
struct LinearProgramDense {
  std::vector<double> objective;
  Matrix constraints;  // num_rows x num_vars
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }

  void validate() const;

  // Plain-text standard form (objective, constraints, bounds) for external
  // cross-checking.
  std::string to_text() const;
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

// Two-phase dense tableau simplex with Bland's anti-cycling rule. Pivot
// tolerance 1e-9, phase-one objective tolerance 1e-7. Upper bounds become
// explicit rows. Throws SolverError on infeasible or unbounded programs and
// when the iteration cap is exceeded. max_iterations of 0 picks a cap from
// the problem size.
SimplexResult solve_simplex(const LinearProgramDense& lp, std::size_t max_iterations = 0);

}  // namespace protoselect
