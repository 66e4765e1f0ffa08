#include "protoselect/oracle.hpp"

#include <string>

#include "protoselect/errors.hpp"

namespace protoselect {

namespace {

// Lexicographic order on ascending index lists.
bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return a < b;
}

struct ClassOptimum {
  long long slack_units = 0;
  long long prototypes = 0;
  double value = 0.0;
  std::vector<std::size_t> set;
};

ClassOptimum enumerate_class(const PcscSubproblem& sub, std::size_t n_points,
                             double lambda) {
  const std::size_t m = sub.costs.size();
  const std::size_t t = sub.target_points.size();

  // Coverage bitmasks over the class's own points, one word per 64 targets.
  const std::size_t words = (t + 63) / 64;
  std::vector<std::size_t> position(n_points, 0);
  for (std::size_t k = 0; k < t; ++k) {
    position[sub.target_points[k]] = k;
  }
  std::vector<std::vector<std::uint64_t>> masks(m,
                                                std::vector<std::uint64_t>(words, 0));
  for (std::size_t j = 0; j < m; ++j) {
    for (const std::size_t i : sub.covers_in_class[j]) {
      const std::size_t k = position[i];
      masks[j][k / 64] |= std::uint64_t{1} << (k % 64);
    }
  }

  ClassOptimum best;
  best.slack_units = static_cast<long long>(t);  // empty selection
  best.prototypes = 0;
  best.value = assemble_objective(best.slack_units, 0, lambda);

  std::vector<std::uint64_t> covered(words);
  std::vector<std::size_t> chosen;
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::fill(covered.begin(), covered.end(), 0);
    chosen.clear();
    long long wrong = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (std::uint64_t{1} << j)) {
        chosen.push_back(j);
        wrong += sub.wrong_cover_counts[j];
        for (std::size_t w = 0; w < words; ++w) {
          covered[w] |= masks[j][w];
        }
      }
    }
    long long covered_count = 0;
    for (std::size_t w = 0; w < words; ++w) {
      covered_count += __builtin_popcountll(covered[w]);
    }
    const long long slack = static_cast<long long>(t) - covered_count + wrong;
    const auto prototypes = static_cast<long long>(chosen.size());
    const double value = assemble_objective(slack, prototypes, lambda);
    if (value < best.value ||
        (value == best.value && lex_less(chosen, best.set))) {
      best.slack_units = slack;
      best.prototypes = prototypes;
      best.value = value;
      best.set = chosen;
    }
  }
  return best;
}

}  // namespace

OracleResult solve_exact(const PrototypeProblem& problem, std::size_t max_candidates) {
  const std::size_t m = problem.incidence.m_candidates;
  if (m > max_candidates || m >= 63) {
    throw InvalidInputError("exact solver: " + std::to_string(m) +
                            " candidates exceeds the enumeration cap of " +
                            std::to_string(max_candidates));
  }
  const std::vector<PcscSubproblem> subs = decompose(problem);

  OracleResult result;
  result.optimal_sets.resize(subs.size());
  for (std::size_t c = 0; c < subs.size(); ++c) {
    const ClassOptimum opt =
        enumerate_class(subs[c], problem.incidence.n_points, problem.lambda);
    result.slack_units += opt.slack_units;
    result.prototype_count += opt.prototypes;
    result.optimal_sets[c] = opt.set;
    result.enumerated += static_cast<long long>(std::uint64_t{1} << m);
  }
  result.optimal_objective =
      assemble_objective(result.slack_units, result.prototype_count, problem.lambda);
  return result;
}

}  // namespace protoselect
