#include "doctest.h"
#include "protoselect/cover.hpp"
#include "protoselect/errors.hpp"
#include "testutil.hpp"

#include <cmath>

using namespace protoselect;

TEST_CASE("toy incidence: strict epsilon balls") {
  const PrototypeProblem prob = testutil::toy_problem();
  const BallIncidence& inc = prob.incidence;
  REQUIRE(inc.m_candidates == 5);
  CHECK(inc.covers[0] == std::vector<std::size_t>{0, 1});
  CHECK(inc.covers[1] == std::vector<std::size_t>{0, 1, 2});
  CHECK(inc.covers[2] == std::vector<std::size_t>{1, 2});
  CHECK(inc.covers[3] == std::vector<std::size_t>{3, 4});
  CHECK(inc.covers[4] == std::vector<std::size_t>{3, 4});
  // covered_by is the exact transpose.
  for (std::size_t j = 0; j < inc.m_candidates; ++j) {
    for (const std::size_t i : inc.covers[j]) {
      const auto& lst = inc.covered_by[i];
      CHECK(std::find(lst.begin(), lst.end(), j) != lst.end());
    }
  }
}

TEST_CASE("boundary points are outside the ball") {
  // Distance exactly epsilon must not count as covered.
  Matrix d(2, 2, 0.0);
  d(0, 1) = 1.5;
  d(1, 0) = 1.5;
  const BallIncidence inc =
      build_incidence(DissimilarityMatrix::create(std::move(d)), 1.5);
  CHECK(inc.covers[0] == std::vector<std::size_t>{0});
  CHECK(inc.covers[1] == std::vector<std::size_t>{1});
}

TEST_CASE("epsilon must be positive and finite") {
  const DissimilarityMatrix d = testutil::toy_dissim();
  CHECK_THROWS_AS(build_incidence(d, 0.0), InvalidInputError);
  CHECK_THROWS_AS(build_incidence(d, -1.0), InvalidInputError);
}

TEST_CASE("toy decomposition costs") {
  const std::vector<PcscSubproblem> subs = decompose(testutil::toy_problem());
  REQUIRE(subs.size() == 2);
  const std::vector<double> class0{0.2, 0.2, 0.2, 2.2, 2.2};
  const std::vector<double> class1{2.2, 3.2, 2.2, 0.2, 0.2};
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(subs[0].costs[j] == doctest::Approx(class0[j]).epsilon(1e-12));
    CHECK(subs[1].costs[j] == doctest::Approx(class1[j]).epsilon(1e-12));
  }
  CHECK(subs[0].target_points == std::vector<std::size_t>{0, 1, 2});
  CHECK(subs[1].target_points == std::vector<std::size_t>{3, 4});
  CHECK(subs[1].covers_in_class[3] == std::vector<std::size_t>{3, 4});
  CHECK(subs[1].covers_in_class[1].empty());
}

TEST_CASE("toy evaluations: frozen ground truth") {
  const PrototypeProblem prob = testutil::toy_problem();

  SUBCASE("optimal selection") {
    const PrototypeSolution sol = evaluate_solution(prob, {{1}, {3}});
    CHECK(sol.uncovered_total == 0);
    CHECK(sol.miscovered_total == 0);
    CHECK(sol.prototype_total == 2);
    CHECK(sol.objective == doctest::Approx(0.4).epsilon(1e-12));
  }

  SUBCASE("empty selection pays every slack") {
    const PrototypeSolution sol = evaluate_solution(prob, {{}, {}});
    CHECK(sol.uncovered_total == 5);
    CHECK(sol.miscovered_total == 0);
    CHECK(sol.objective == doctest::Approx(5.0).epsilon(1e-12));
  }

  SUBCASE("wrong-class prototype is charged for both slacks") {
    // Candidate at 10 selected for class 0: it covers only the two class-1
    // points, so every point stays uncovered and both class-1 points are
    // miscovered on top.
    const PrototypeSolution sol = evaluate_solution(prob, {{3}, {}});
    CHECK(sol.uncovered_total == 5);
    CHECK(sol.miscover_counts[3] == 1);
    CHECK(sol.miscover_counts[4] == 1);
    CHECK(sol.miscovered_total == 2);
    CHECK(sol.objective == doctest::Approx(7.2).epsilon(1e-12));
    // Independent recomputation straight from distances.
    const testutil::BruteScore brute = testutil::brute_score(
        testutil::toy_dissim(), {0, 0, 0, 1, 1}, 2, 1.5, 0.2, {{3}, {}});
    CHECK(brute.objective == sol.objective);
  }
}

TEST_CASE("objective is invariant to order and duplicates in a set") {
  const PrototypeProblem prob = testutil::toy_problem();
  const PrototypeSolution a = evaluate_solution(prob, {{1, 0}, {3}});
  const PrototypeSolution b = evaluate_solution(prob, {{0, 1}, {3}});
  const PrototypeSolution c = evaluate_solution(prob, {{0, 1, 1, 0}, {3, 3}});
  CHECK(a.objective == b.objective);
  CHECK(a.objective == c.objective);
  CHECK(c.prototype_total == 3);
}

TEST_CASE("out-of-range prototype index is rejected") {
  const PrototypeProblem prob = testutil::toy_problem();
  CHECK_THROWS_AS(evaluate_solution(prob, {{9}, {}}), InvalidInputError);
}

TEST_CASE("evaluation matches the brute-force slack oracle on random instances") {
  SplitMix64 rng(50);
  for (int trial = 0; trial < 60; ++trial) {
    const testutil::RandomInstance inst =
        testutil::make_random_instance(rng, 18, 4, 18, trial);
    const auto sets = testutil::random_sets(
        rng, inst.problem.candidate_count(), inst.problem.dataset.num_classes, 0.2);
    const PrototypeSolution sol = evaluate_solution(inst.problem, sets);
    const testutil::BruteScore brute =
        testutil::brute_score(inst.d, inst.labels, inst.problem.dataset.num_classes,
                              inst.epsilon, inst.lambda, sets);
    CHECK(sol.uncovered_total == brute.uncovered);
    CHECK(sol.miscovered_total == brute.miscovered);
    CHECK(sol.prototype_total == brute.prototypes);
    CHECK(sol.objective == doctest::Approx(brute.objective).epsilon(1e-12));
    for (std::size_t c = 0; c < sol.per_class_objective.size(); ++c) {
      CHECK(sol.per_class_objective[c] ==
            doctest::Approx(brute.per_class[c]).epsilon(1e-12));
    }
  }
}

TEST_CASE("decomposition identity holds on random instances") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const testutil::RandomInstance inst =
        testutil::make_random_instance(rng, 20, 4, 20, trial);
    const auto sets = testutil::random_sets(
        rng, inst.problem.candidate_count(), inst.problem.dataset.num_classes, 0.25);
    CHECK(decomposition_identity(inst.problem, sets));
    // The identity is also exact on the integer components.
    const PrototypeSolution sol = evaluate_solution(inst.problem, sets);
    double per_class_sum = 0.0;
    for (const double v : sol.per_class_objective) {
      per_class_sum += v;
    }
    CHECK(std::fabs(sol.objective - per_class_sum) <= 1e-9);
  }
}

TEST_CASE("per-class objective equals its subproblem cost form") {
  // Sum over selected candidates of C(j) plus uncovered targets, checked
  // against decompose()'s cost vectors directly.
  SplitMix64 rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const testutil::RandomInstance inst =
        testutil::make_random_instance(rng, 15, 3, 15, trial);
    const auto sets = testutil::random_sets(
        rng, inst.problem.candidate_count(), inst.problem.dataset.num_classes, 0.3);
    const PrototypeSolution sol = evaluate_solution(inst.problem, sets);
    const std::vector<PcscSubproblem> subs = decompose(inst.problem);
    for (std::size_t c = 0; c < subs.size(); ++c) {
      double expect = 0.0;
      for (const std::size_t j : sol.sets[c]) {
        expect += subs[c].costs[j];
      }
      for (const std::size_t i : subs[c].target_points) {
        expect += sol.uncovered[i] ? 1.0 : 0.0;
      }
      CHECK(sol.per_class_objective[c] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("labels must form a contiguous populated class range") {
  CHECK_THROWS_AS(LabeledDataset::create({0, 2, 2}), InvalidInputError);  // class 1 empty
  CHECK_THROWS_AS(LabeledDataset::create({0, 1}, 3), InvalidInputError);
  CHECK_THROWS_AS(LabeledDataset::create({-1, 0}), InvalidInputError);
  CHECK_THROWS_AS(LabeledDataset::create({}), InvalidInputError);
  const LabeledDataset ds = LabeledDataset::create({1, 0, 1});
  CHECK(ds.num_classes == 2);
  CHECK(ds.class_index[1] == std::vector<std::size_t>{0, 2});
}

TEST_CASE("lambda must be nonnegative") {
  PrototypeProblem prob = testutil::toy_problem();
  prob.lambda = -0.1;
  CHECK_THROWS_AS(decompose(prob), InvalidInputError);
}
