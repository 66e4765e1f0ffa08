#include "doctest.h"
#include "protoselect/errors.hpp"
#include "protoselect/kernels.hpp"
#include "protoselect/rng.hpp"

#include <cmath>

using namespace protoselect;

namespace {

Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.next_double() * 20.0 - 10.0;
    }
  }
  return m;
}

double l2sq_reference(const double* a, const double* b, std::size_t p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    acc += (a[k] - b[k]) * (a[k] - b[k]);
  }
  return acc;
}

double l1_reference(const double* a, const double* b, std::size_t p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    acc += std::fabs(a[k] - b[k]);
  }
  return acc;
}

}  // namespace

TEST_CASE("scalar kernels match the plain-loop reference exactly") {
  SplitMix64 rng(101);
  for (std::size_t p : {std::size_t{1}, std::size_t{3}, std::size_t{8}, std::size_t{17}}) {
    const Matrix m = random_matrix(rng, 6, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.rows(); ++j) {
        CHECK(kernels::l2sq_scalar(m.row(i).data(), m.row(j).data(), p) ==
              l2sq_reference(m.row(i).data(), m.row(j).data(), p));
        CHECK(kernels::l1_scalar(m.row(i).data(), m.row(j).data(), p) ==
              l1_reference(m.row(i).data(), m.row(j).data(), p));
      }
    }
  }
}

#if defined(__x86_64__) && defined(__GNUC__)
TEST_CASE("avx2 kernels agree with scalar within rounding") {
  if (!__builtin_cpu_supports("avx2")) {
    return;  // nothing to compare on this machine
  }
  SplitMix64 rng(202);
  // Cover every remainder length around the 4-lane width.
  for (std::size_t p = 1; p <= 19; ++p) {
    const Matrix m = random_matrix(rng, 5, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.rows(); ++j) {
        const double s2 = kernels::l2sq_scalar(m.row(i).data(), m.row(j).data(), p);
        const double v2 = kernels::l2sq_avx2(m.row(i).data(), m.row(j).data(), p);
        CHECK(std::fabs(s2 - v2) <= 1e-9 * (1.0 + std::fabs(s2)));
        const double s1 = kernels::l1_scalar(m.row(i).data(), m.row(j).data(), p);
        const double v1 = kernels::l1_avx2(m.row(i).data(), m.row(j).data(), p);
        CHECK(std::fabs(s1 - v1) <= 1e-9 * (1.0 + std::fabs(s1)));
      }
    }
  }
}
#endif

TEST_CASE("forced dispatch paths produce equivalent pairwise matrices") {
  SplitMix64 rng(303);
  const Matrix a = random_matrix(rng, 7, 11);
  const Matrix b = random_matrix(rng, 4, 11);

  kernels::force_isa(kernels::Isa::Scalar);
  const Matrix scalar_l2 = kernels::pairwise_l2(a, b, false);
  const Matrix scalar_l1 = kernels::pairwise_l1(a, b);
  kernels::reset_isa();

  const Matrix auto_l2 = kernels::pairwise_l2(a, b, false);
  const Matrix auto_l1 = kernels::pairwise_l1(a, b);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      CHECK(std::fabs(scalar_l2(i, j) - auto_l2(i, j)) <= 1e-9);
      CHECK(std::fabs(scalar_l1(i, j) - auto_l1(i, j)) <= 1e-9);
    }
  }
}

TEST_CASE("pairwise rejects mismatched dimensions") {
  const Matrix a(2, 3, 0.0);
  const Matrix b(2, 4, 0.0);
  CHECK_THROWS_AS(kernels::pairwise_l2(a, b, false), InvalidInputError);
}
