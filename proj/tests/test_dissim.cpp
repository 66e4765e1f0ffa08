#include "doctest.h"
#include "protoselect/dissim.hpp"
#include "protoselect/errors.hpp"
#include "protoselect/rng.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace protoselect;

namespace {

Matrix random_features(SplitMix64& rng, std::size_t n, std::size_t p) {
  Matrix m(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      m(i, j) = rng.next_double() * 8.0 - 4.0;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("dissimilarity matches a double-loop oracle, is symmetric, zero diagonal") {
  SplitMix64 rng(17);
  const FeatureTable f = FeatureTable::create(random_features(rng, 12, 5));
  for (const Metric metric : {Metric::L2, Metric::L1}) {
    const DissimilarityMatrix d = compute_dissimilarity(f, metric);
    REQUIRE(d.points() == 12);
    REQUIRE(d.candidates() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(d.values(i, i) == 0.0);
      for (std::size_t j = 0; j < 12; ++j) {
        CHECK(d.values(i, j) == d.values(j, i));
        double expect = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
          const double diff = f.values(i, k) - f.values(j, k);
          expect += metric == Metric::L2 ? diff * diff : std::fabs(diff);
        }
        if (metric == Metric::L2) {
          expect = std::sqrt(expect);
        }
        CHECK(std::fabs(d.values(i, j) - expect) <= 1e-12 * (1.0 + expect));
      }
    }
  }
}

TEST_CASE("known 2-point distances") {
  // (0,0) vs (3,4): L2 = 5, L1 = 7.
  const FeatureTable f =
      FeatureTable::create(Matrix::from_rows({{0.0, 0.0}, {3.0, 4.0}}));
  CHECK(compute_dissimilarity(f, Metric::L2).values(0, 1) == doctest::Approx(5.0));
  CHECK(compute_dissimilarity(f, Metric::L1).values(0, 1) == doctest::Approx(7.0));
}

TEST_CASE("metric distances satisfy the triangle inequality") {
  SplitMix64 rng(29);
  const FeatureTable f = FeatureTable::create(random_features(rng, 10, 3));
  for (const Metric metric : {Metric::L2, Metric::L1}) {
    const DissimilarityMatrix d = compute_dissimilarity(f, metric);
    for (std::size_t a = 0; a < 10; ++a) {
      for (std::size_t b = 0; b < 10; ++b) {
        for (std::size_t c = 0; c < 10; ++c) {
          CHECK(d.values(a, c) <= d.values(a, b) + d.values(b, c) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("non-finite features are rejected") {
  Matrix m(2, 2, 0.0);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(FeatureTable::create(std::move(m)), InvalidInputError);
}

TEST_CASE("kernel-induced distance equals euclidean distance on the gram matrix") {
  SplitMix64 rng(31);
  const FeatureTable f = FeatureTable::create(random_features(rng, 9, 4));
  Matrix gram(9, 9);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        dot += f.values(i, k) * f.values(j, k);
      }
      gram(i, j) = dot;
    }
  }
  const DissimilarityMatrix from_kernel = kernel_to_distance(KernelMatrix::create(std::move(gram)));
  const DissimilarityMatrix direct = compute_dissimilarity(f, Metric::L2);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(std::fabs(from_kernel.values(i, j) - direct.values(i, j)) <= 1e-9);
    }
  }
}

TEST_CASE("kernel validation: asymmetry and negative squared distances are rejected") {
  Matrix asym(2, 2, 1.0);
  asym(0, 1) = 1.0;
  asym(1, 0) = 1.5;
  CHECK_THROWS_AS(KernelMatrix::create(std::move(asym)), InvalidInputError);

  // K_00 + K_11 - 2 K_01 = 1 + 1 - 4 < 0: not a valid inner-product structure.
  Matrix bad(2, 2, 1.0);
  bad(0, 1) = 2.0;
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(kernel_to_distance(KernelMatrix::create(std::move(bad))),
                  InvalidInputError);

  // A -1e-10 violation is rounding noise and clamps to zero.
  Matrix near(2, 2, 1.0);
  near(0, 1) = 1.0 + 5e-11;
  near(1, 0) = 1.0 + 5e-11;
  const DissimilarityMatrix d = kernel_to_distance(KernelMatrix::create(std::move(near)));
  CHECK(d.values(0, 1) == 0.0);
}

TEST_CASE("rank transform counts training rows at least as close") {
  // Column of distances to one candidate: rows 0..3 at 2.0, 1.0, 1.0, 5.0.
  Matrix m(4, 1);
  m(0, 0) = 2.0;
  m(1, 0) = 1.0;
  m(2, 0) = 1.0;
  m(3, 0) = 5.0;
  const DissimilarityMatrix d = DissimilarityMatrix::create(std::move(m));
  const DissimilarityMatrix r = rank_transform(d, {0, 1, 2, 3});
  CHECK(r.values(0, 0) == 3.0);  // 2.0, 1.0, 1.0 are all <= 2.0
  CHECK(r.values(1, 0) == 2.0);  // ties count: both 1.0 rows
  CHECK(r.values(2, 0) == 2.0);
  CHECK(r.values(3, 0) == 4.0);

  // Restricting the training rows shrinks the counts.
  const DissimilarityMatrix r2 = rank_transform(d, {0, 3});
  CHECK(r2.values(1, 0) == 0.0);  // no training row within 1.0
  CHECK(r2.values(0, 0) == 1.0);

  CHECK_THROWS_AS(rank_transform(d, {}), InvalidInputError);
  CHECK_THROWS_AS(rank_transform(d, {9}), InvalidInputError);
}

TEST_CASE("rank transform is monotone in the underlying distances per column") {
  SplitMix64 rng(37);
  const FeatureTable f = FeatureTable::create(random_features(rng, 15, 3));
  const DissimilarityMatrix d = compute_dissimilarity(f, Metric::L2);
  std::vector<std::size_t> all(15);
  for (std::size_t i = 0; i < 15; ++i) {
    all[i] = i;
  }
  const DissimilarityMatrix r = rank_transform(d, all);
  for (std::size_t j = 0; j < 15; ++j) {
    for (std::size_t a = 0; a < 15; ++a) {
      for (std::size_t b = 0; b < 15; ++b) {
        if (d.values(a, j) < d.values(b, j)) {
          CHECK(r.values(a, j) <= r.values(b, j));
        }
        if (d.values(a, j) == d.values(b, j)) {
          CHECK(r.values(a, j) == r.values(b, j));
        }
      }
    }
  }
}

TEST_CASE("quantiles follow the type-1 convention") {
  // Pool {1, 2, 3, 4} spread over an off-diagonal.
  Matrix m(2, 3, 0.0);
  m(0, 1) = 1.0;
  m(0, 2) = 2.0;
  m(1, 0) = 3.0;
  m(1, 2) = 4.0;
  const DissimilarityMatrix d = DissimilarityMatrix::create(std::move(m));
  const std::vector<double> q = distance_quantiles(d, {0.0, 0.5, 1.0});
  CHECK(q[0] == 1.0);
  CHECK(q[1] == 2.0);  // lower interpolation at the median
  CHECK(q[2] == 4.0);

  CHECK(distance_quantiles(d, {0.25})[0] == 1.0);
  CHECK(distance_quantiles(d, {0.26})[0] == 2.0);
  CHECK(distance_quantiles(d, {0.75})[0] == 3.0);
}

TEST_CASE("quantiles are monotone in the probability") {
  SplitMix64 rng(41);
  const FeatureTable f = FeatureTable::create(random_features(rng, 14, 2));
  const DissimilarityMatrix d = compute_dissimilarity(f, Metric::L2);
  std::vector<double> probs;
  for (int k = 0; k <= 20; ++k) {
    probs.push_back(static_cast<double>(k) / 20.0);
  }
  const std::vector<double> q = distance_quantiles(d, probs);
  for (std::size_t k = 1; k < q.size(); ++k) {
    CHECK(q[k - 1] <= q[k]);
  }
  CHECK(q.front() > 0.0);  // zeros excluded from the pool
}

TEST_CASE("quantile edge cases: diagonal-only zeros, all-zero matrix, bad probs") {
  Matrix all_zero(3, 3, 0.0);
  const DissimilarityMatrix z = DissimilarityMatrix::create(std::move(all_zero));
  CHECK_THROWS_AS(distance_quantiles(z, {0.5}), InvalidInputError);

  Matrix ok(2, 2, 0.0);
  ok(0, 1) = 2.0;
  ok(1, 0) = 2.0;
  const DissimilarityMatrix d = DissimilarityMatrix::create(std::move(ok));
  CHECK_THROWS_AS(distance_quantiles(d, {}), InvalidInputError);
  CHECK_THROWS_AS(distance_quantiles(d, {1.5}), InvalidInputError);
  CHECK_THROWS_AS(distance_quantiles(d, {-0.1}), InvalidInputError);
  CHECK(distance_quantiles(d, {0.0})[0] == 2.0);
}

TEST_CASE("duplicate points do not drag the minimum quantile to zero") {
  const FeatureTable f =
      FeatureTable::create(Matrix::from_rows({{1.0}, {1.0}, {4.0}}));
  const DissimilarityMatrix d = compute_dissimilarity(f, Metric::L2);
  CHECK(distance_quantiles(d, {0.0})[0] == 3.0);
}
