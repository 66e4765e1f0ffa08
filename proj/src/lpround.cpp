#include "protoselect/lpround.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "protoselect/errors.hpp"
#include "protoselect/rng.hpp"

namespace protoselect {

namespace {

constexpr double kFeasibilityTol = 1e-7;

// target-position lookup: point id -> row index within the subproblem.
std::vector<std::size_t> target_positions(const PcscSubproblem& sub) {
  std::size_t max_point = 0;
  for (const std::size_t i : sub.target_points) {
    max_point = std::max(max_point, i);
  }
  std::vector<std::size_t> pos(max_point + 1, std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < sub.target_points.size(); ++k) {
    pos[sub.target_points[k]] = k;
  }
  return pos;
}

// covering[t]: candidates whose ball holds target t.
std::vector<std::vector<std::size_t>> covering_lists(const PcscSubproblem& sub) {
  const std::vector<std::size_t> pos = target_positions(sub);
  std::vector<std::vector<std::size_t>> covering(sub.target_points.size());
  for (std::size_t j = 0; j < sub.covers_in_class.size(); ++j) {
    for (const std::size_t i : sub.covers_in_class[j]) {
      covering[pos[i]].push_back(j);
    }
  }
  return covering;
}

}  // namespace

LinearProgramDense build_lp(const PcscSubproblem& sub) {
  const std::size_t m = sub.costs.size();
  const std::size_t t = sub.target_points.size();
  if (t == 0) {
    throw InvalidInputError("lp relaxation: class has no target points");
  }

  LinearProgramDense lp;
  lp.objective = sub.costs;
  lp.objective.insert(lp.objective.end(), t, 1.0);  // slack costs
  lp.constraints = Matrix(t, m + t);
  lp.relations.assign(t, Relation::GreaterEqual);
  lp.rhs.assign(t, 1.0);
  lp.lower.assign(m + t, 0.0);
  lp.upper.assign(m + t, 1.0);

  const std::vector<std::vector<std::size_t>> covering = covering_lists(sub);
  for (std::size_t row = 0; row < t; ++row) {
    for (const std::size_t j : covering[row]) {
      lp.constraints(row, j) = 1.0;
    }
    lp.constraints(row, m + row) = 1.0;
  }
  return lp;
}

LpSolution solve_lp(const LinearProgramDense& lp, const PcscSubproblem& sub) {
  const std::size_t m = sub.costs.size();
  const std::size_t t = sub.target_points.size();
  if (lp.num_vars() != m + t) {
    throw InvalidInputError("lp relaxation: variable count mismatch with subproblem");
  }
  const SimplexResult res = solve_simplex(lp);

  LpSolution out;
  out.candidate_weights.assign(res.x.begin(), res.x.begin() + static_cast<long>(m));
  out.slack_weights.assign(res.x.begin() + static_cast<long>(m), res.x.end());
  for (double& v : out.candidate_weights) {
    v = std::clamp(v, 0.0, 1.0);
  }
  for (double& v : out.slack_weights) {
    v = std::clamp(v, 0.0, 1.0);
  }
  out.iterations = res.iterations;

  // Feasibility of the returned point, in problem terms.
  const std::vector<std::vector<std::size_t>> covering = covering_lists(sub);
  for (std::size_t row = 0; row < t; ++row) {
    double mass = out.slack_weights[row];
    for (const std::size_t j : covering[row]) {
      mass += out.candidate_weights[j];
    }
    if (mass < 1.0 - kFeasibilityTol) {
      throw SolverError("lp relaxation: returned point violates covering row " +
                        std::to_string(row));
    }
  }

  double value = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    value += sub.costs[j] * out.candidate_weights[j];
  }
  for (std::size_t row = 0; row < t; ++row) {
    value += out.slack_weights[row];
  }
  out.opt_value = value;
  return out;
}

RoundingOutcome randomized_round(const LpSolution& lps, const PcscSubproblem& sub,
                                 std::uint64_t seed, std::size_t max_attempts) {
  const std::size_t m = sub.costs.size();
  const std::size_t t = sub.target_points.size();
  if (t == 0) {
    throw InvalidInputError("rounding: class has no target points");
  }
  if (lps.candidate_weights.size() != m || lps.slack_weights.size() != t) {
    throw InvalidInputError("rounding: solution size mismatch with subproblem");
  }

  const std::vector<std::vector<std::size_t>> covering = covering_lists(sub);
  const double log_targets = std::log(static_cast<double>(t));
  const auto rounds =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * log_targets)));
  const bool check_bound = t > 1;  // the factor collapses to zero otherwise
  const double bound = 2.0 * log_targets * lps.opt_value;

  std::vector<char> selected(m);
  std::vector<char> slacked(t);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    SplitMix64 rng(derive_seed(seed, attempt));
    std::fill(selected.begin(), selected.end(), 0);
    std::fill(slacked.begin(), slacked.end(), 0);
    for (std::size_t round = 1; round <= rounds; ++round) {
      for (std::size_t j = 0; j < m; ++j) {
        if (rng.bernoulli(lps.candidate_weights[j])) {
          selected[j] = 1;
        }
      }
      for (std::size_t k = 0; k < t; ++k) {
        if (rng.bernoulli(lps.slack_weights[k])) {
          slacked[k] = 1;
        }
      }

      bool feasible = true;
      for (std::size_t k = 0; k < t && feasible; ++k) {
        if (slacked[k]) {
          continue;
        }
        bool hit = false;
        for (const std::size_t j : covering[k]) {
          if (selected[j]) {
            hit = true;
            break;
          }
        }
        feasible = hit;
      }
      if (!feasible) {
        continue;
      }
      double objective = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (selected[j]) {
          objective += sub.costs[j];
        }
      }
      for (std::size_t k = 0; k < t; ++k) {
        objective += slacked[k] ? 1.0 : 0.0;
      }
      if (check_bound && objective > bound + 1e-9) {
        continue;
      }

      RoundingOutcome out;
      for (std::size_t j = 0; j < m; ++j) {
        if (selected[j]) {
          out.selected.push_back(j);
        }
      }
      for (std::size_t k = 0; k < t; ++k) {
        if (slacked[k]) {
          out.abstained.push_back(sub.target_points[k]);
        }
      }
      out.rounds_used = round;
      out.attempts = attempt + 1;
      out.objective = objective;
      out.bound = check_bound ? bound : 0.0;
      return out;
    }
  }
  throw SolverError("rounding: no acceptable selection within " +
                    std::to_string(max_attempts) + " reseeded attempts");
}

LpRoundingResult solve_lp_rounding(const PrototypeProblem& problem, std::uint64_t seed) {
  const std::vector<PcscSubproblem> subs = decompose(problem);
  LpRoundingResult result;
  std::vector<std::vector<std::size_t>> sets(subs.size());
  for (std::size_t c = 0; c < subs.size(); ++c) {
    try {
      const LinearProgramDense lp = build_lp(subs[c]);
      const LpSolution lps = solve_lp(lp, subs[c]);
      const RoundingOutcome outcome = randomized_round(
          lps, subs[c], derive_seed(seed, static_cast<std::uint64_t>(c)));
      sets[c] = outcome.selected;

      ClassLpReport report;
      report.class_id = subs[c].class_id;
      report.target_count = subs[c].target_points.size();
      report.opt_lp = lps.opt_value;
      report.rounding = outcome;
      result.per_class.push_back(std::move(report));
    } catch (const SolverError& e) {
      throw SolverError("class " + std::to_string(subs[c].class_id) + ": " + e.what());
    }
  }
  result.solution = evaluate_solution(problem, sets);
  return result;
}

}  // namespace protoselect
