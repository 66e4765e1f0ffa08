#include "doctest.h"
#include "protoselect/errors.hpp"
#include "protoselect/simplex.hpp"
#include "testutil.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

using namespace protoselect;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Terse builder for small programs: all sizes inferred from the objective.
LinearProgramDense make_lp(std::vector<double> objective,
                           const std::vector<std::vector<double>>& rows,
                           std::vector<Relation> relations, std::vector<double> rhs,
                           std::vector<double> lower, std::vector<double> upper) {
  LinearProgramDense lp;
  lp.objective = std::move(objective);
  lp.constraints = Matrix::from_rows(rows);
  lp.relations = std::move(relations);
  lp.rhs = std::move(rhs);
  lp.lower = std::move(lower);
  lp.upper = std::move(upper);
  return lp;
}

}  // namespace

TEST_CASE("validate rejects malformed programs") {
  LinearProgramDense lp = make_lp({1.0, 1.0}, {{1.0, 1.0}}, {Relation::GreaterEqual},
                                  {1.0}, {0.0, 0.0}, {1.0, 1.0});
  CHECK_NOTHROW(lp.validate());

  LinearProgramDense empty = lp;
  empty.objective.clear();
  CHECK_THROWS_AS(empty.validate(), InvalidInputError);

  LinearProgramDense shape = lp;
  shape.rhs.push_back(2.0);
  CHECK_THROWS_AS(shape.validate(), InvalidInputError);

  LinearProgramDense nonfinite = lp;
  nonfinite.objective[0] = kInf;
  CHECK_THROWS_AS(nonfinite.validate(), InvalidInputError);

  LinearProgramDense inverted = lp;
  inverted.upper[1] = -1.0;
  CHECK_THROWS_AS(inverted.validate(), InvalidInputError);

  LinearProgramDense openlow = lp;
  openlow.lower[0] = -kInf;
  CHECK_THROWS_AS(openlow.validate(), InvalidInputError);
}

TEST_CASE("unique vertex with a binding upper bound") {
  // min 2x + 3y  s.t.  x + y >= 2,  x in [0, 1.5],  y >= 0.
  const LinearProgramDense lp =
      make_lp({2.0, 3.0}, {{1.0, 1.0}}, {Relation::GreaterEqual}, {2.0}, {0.0, 0.0},
              {1.5, kInf});
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(4.5).epsilon(1e-9));
  CHECK(res.x[0] == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(res.x[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("equality constraints are honored") {
  // min x + 2y  s.t.  x + y = 1,  both in [0, 1].
  const LinearProgramDense lp = make_lp({1.0, 2.0}, {{1.0, 1.0}}, {Relation::Equal},
                                        {1.0}, {0.0, 0.0}, {1.0, 1.0});
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.x[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("duplicate rows do not break the pivoting") {
  const LinearProgramDense lp = make_lp(
      {1.0, 1.0}, {{1.0, 1.0}, {1.0, 1.0}},
      {Relation::GreaterEqual, Relation::GreaterEqual}, {1.0, 1.0}, {0.0, 0.0},
      {kInf, kInf});
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.x[0] + res.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("negative lower bounds shift correctly") {
  // min x  s.t.  x <= 0,  x >= -2.
  const LinearProgramDense lp =
      make_lp({1.0}, {{1.0}}, {Relation::LessEqual}, {0.0}, {-2.0}, {kInf});
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(res.x[0] == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded programs are reported") {
  // x >= 1 clashes with the upper bound 0.5.
  const LinearProgramDense infeasible =
      make_lp({1.0}, {{1.0}}, {Relation::GreaterEqual}, {1.0}, {0.0}, {0.5});
  CHECK_THROWS_AS(solve_simplex(infeasible), SolverError);

  // min -x with x free above and no binding row.
  const LinearProgramDense unbounded =
      make_lp({-1.0}, {{1.0}}, {Relation::GreaterEqual}, {0.0}, {0.0}, {kInf});
  CHECK_THROWS_AS(solve_simplex(unbounded), SolverError);
}

TEST_CASE("iteration cap trips") {
  const LinearProgramDense lp =
      make_lp({2.0, 3.0}, {{1.0, 1.0}}, {Relation::GreaterEqual}, {2.0}, {0.0, 0.0},
              {1.5, kInf});
  CHECK_THROWS_AS(solve_simplex(lp, 1), SolverError);
}

TEST_CASE("covering program with one dominant candidate") {
  // Candidates: {t0, t1} for 0.5, {t1, t2} for 0.5, {t0, t1, t2} for 0.6;
  // slacks cost 1. The triple-cover candidate wins outright.
  const LinearProgramDense lp = make_lp(
      {0.5, 0.5, 0.6, 1.0, 1.0, 1.0},
      {{1.0, 0.0, 1.0, 1.0, 0.0, 0.0},
       {1.0, 1.0, 1.0, 0.0, 1.0, 0.0},
       {0.0, 1.0, 1.0, 0.0, 0.0, 1.0}},
      {Relation::GreaterEqual, Relation::GreaterEqual, Relation::GreaterEqual},
      {1.0, 1.0, 1.0}, std::vector<double>(6, 0.0), std::vector<double>(6, 1.0));
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(res.x[2] == doctest::Approx(1.0).epsilon(1e-9));
  for (const std::size_t j : {0, 1, 3, 4, 5}) {
    CHECK(res.x[j] == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("separable singleton covers add up") {
  // Three targets, each covered by its own candidate at cost 0.2.
  Matrix rows(3, 6);
  for (std::size_t t = 0; t < 3; ++t) {
    rows(t, t) = 1.0;
    rows(t, 3 + t) = 1.0;
  }
  LinearProgramDense lp;
  lp.objective = {0.2, 0.2, 0.2, 1.0, 1.0, 1.0};
  lp.constraints = rows;
  lp.relations.assign(3, Relation::GreaterEqual);
  lp.rhs.assign(3, 1.0);
  lp.lower.assign(6, 0.0);
  lp.upper.assign(6, 1.0);
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(0.6).epsilon(1e-9));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(res.x[j] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.x[3 + j] == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("odd-cycle covering program has a fractional optimum") {
  // Each candidate covers two of three targets at unit cost; the best
  // fractional point puts one half on every candidate.
  const LinearProgramDense lp = make_lp(
      {1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
      {{1.0, 0.0, 1.0, 1.0, 0.0, 0.0},
       {1.0, 1.0, 0.0, 0.0, 1.0, 0.0},
       {0.0, 1.0, 1.0, 0.0, 0.0, 1.0}},
      {Relation::GreaterEqual, Relation::GreaterEqual, Relation::GreaterEqual},
      {1.0, 1.0, 1.0}, std::vector<double>(6, 0.0), std::vector<double>(6, 1.0));
  const SimplexResult res = solve_simplex(lp);
  CHECK(res.objective == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("random covering programs stay inside their sandwich") {
  SplitMix64 rng(911);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t targets = 1 + rng.next_below(6);
    const std::size_t cands = 1 + rng.next_below(6);
    Matrix a(targets, cands + targets);
    std::vector<std::vector<std::size_t>> option_cols(targets);
    for (std::size_t t = 0; t < targets; ++t) {
      for (std::size_t j = 0; j < cands; ++j) {
        if (rng.bernoulli(0.45)) {
          a(t, j) = 1.0;
          option_cols[t].push_back(j);
        }
      }
      a(t, cands + t) = 1.0;
    }
    LinearProgramDense lp;
    lp.objective.resize(cands + targets, 1.0);
    for (std::size_t j = 0; j < cands; ++j) {
      lp.objective[j] = 0.1 + 2.9 * rng.next_double();
    }
    lp.constraints = a;
    lp.relations.assign(targets, Relation::GreaterEqual);
    lp.rhs.assign(targets, 1.0);
    lp.lower.assign(cands + targets, 0.0);
    lp.upper.assign(cands + targets, 1.0);

    const SimplexResult res = solve_simplex(lp);

    // Bounds and constraints hold at the returned point.
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      CHECK(res.x[j] >= -1e-9);
      CHECK(res.x[j] <= 1.0 + 1e-9);
    }
    for (std::size_t t = 0; t < targets; ++t) {
      double mass = res.x[cands + t];
      for (const std::size_t j : option_cols[t]) {
        mass += res.x[j];
      }
      CHECK(mass >= 1.0 - 1e-9);
    }

    // All-slack point is feasible, so the optimum can never exceed it.
    CHECK(res.objective <= static_cast<double>(targets) + 1e-9);

    // Single-row relaxation: each row alone forces at least its cheapest
    // option's cost.
    double single_row_bound = 0.0;
    for (std::size_t t = 0; t < targets; ++t) {
      double cheapest = 1.0;  // the slack
      for (const std::size_t j : option_cols[t]) {
        cheapest = std::min(cheapest, lp.objective[j]);
      }
      single_row_bound = std::max(single_row_bound, cheapest);
    }
    CHECK(res.objective >= single_row_bound - 1e-9);

    // Exhaustive integral points upper-bound check: LP optimum is never
    // above the best 0/1 selection (slacks filled in as needed).
    double best_integral = kInf;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cands); ++mask) {
      double value = 0.0;
      for (std::size_t j = 0; j < cands; ++j) {
        if (mask & (std::size_t{1} << j)) {
          value += lp.objective[j];
        }
      }
      for (std::size_t t = 0; t < targets; ++t) {
        bool hit = false;
        for (const std::size_t j : option_cols[t]) {
          if (mask & (std::size_t{1} << j)) {
            hit = true;
            break;
          }
        }
        if (!hit) {
          value += 1.0;
        }
      }
      best_integral = std::min(best_integral, value);
    }
    CHECK(res.objective <= best_integral + 1e-9);
  }
}

TEST_CASE("to_text dumps a readable standard form") {
  const LinearProgramDense lp =
      make_lp({2.0, 3.0}, {{1.0, 1.0}}, {Relation::GreaterEqual}, {2.0}, {0.0, 0.0},
              {1.5, kInf});
  const std::string text = lp.to_text();
  CHECK(text.find("minimize") != std::string::npos);
  CHECK(text.find("subject to") != std::string::npos);
  CHECK(text.find(">=") != std::string::npos);
  CHECK(text.find("bounds") != std::string::npos);
  CHECK(text.find("inf") != std::string::npos);
}
