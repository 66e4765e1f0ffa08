#include "protoselect/kernels.hpp"

#include <cmath>

#include "protoselect/errors.hpp"

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define PROTOSELECT_HAVE_AVX2_BUILD 1
#endif

namespace protoselect::kernels {

// ===== scalar reference kernels =====

double l2sq_scalar(const double* a, const double* b, std::size_t p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

double l1_scalar(const double* a, const double* b, std::size_t p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    acc += std::fabs(a[k] - b[k]);
  }
  return acc;
}

// ===== AVX2 variants =====

#ifdef PROTOSELECT_HAVE_AVX2_BUILD

__attribute__((target("avx2"))) double l2sq_avx2(const double* a, const double* b,
                                                 std::size_t p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= p; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double out = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < p; ++k) {
    const double d = a[k] - b[k];
    out += d * d;
  }
  return out;
}

__attribute__((target("avx2"))) double l1_avx2(const double* a, const double* b,
                                               std::size_t p) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= p; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double out = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < p; ++k) {
    out += std::fabs(a[k] - b[k]);
  }
  return out;
}

#endif  // PROTOSELECT_HAVE_AVX2_BUILD

// ===== runtime dispatch =====

namespace {

Isa detect_isa() {
#ifdef PROTOSELECT_HAVE_AVX2_BUILD
  if (__builtin_cpu_supports("avx2")) {
    return Isa::Avx2;
  }
#endif
  return Isa::Scalar;
}

Isa g_isa = detect_isa();

}  // namespace

Isa active_isa() { return g_isa; }

void force_isa(Isa isa) {
#ifndef PROTOSELECT_HAVE_AVX2_BUILD
  if (isa == Isa::Avx2) {
    return;  // no AVX2 code in this build; stay scalar
  }
#endif
  g_isa = isa;
}

void reset_isa() { g_isa = detect_isa(); }

double l2sq(const double* a, const double* b, std::size_t p) {
#ifdef PROTOSELECT_HAVE_AVX2_BUILD
  if (g_isa == Isa::Avx2) {
    return l2sq_avx2(a, b, p);
  }
#endif
  return l2sq_scalar(a, b, p);
}

double l1(const double* a, const double* b, std::size_t p) {
#ifdef PROTOSELECT_HAVE_AVX2_BUILD
  if (g_isa == Isa::Avx2) {
    return l1_avx2(a, b, p);
  }
#endif
  return l1_scalar(a, b, p);
}

Matrix pairwise_l2(const Matrix& a, const Matrix& b, bool squared) {
  if (a.cols() != b.cols()) {
    throw InvalidInputError("pairwise distance: feature dimension mismatch");
  }
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ra = a.row(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double v = l2sq(ra, b.row(j).data(), a.cols());
      out(i, j) = squared ? v : std::sqrt(v);
    }
  }
  return out;
}

Matrix pairwise_l1(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw InvalidInputError("pairwise distance: feature dimension mismatch");
  }
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ra = a.row(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      out(i, j) = l1(ra, b.row(j).data(), a.cols());
    }
  }
  return out;
}

}  // namespace protoselect::kernels
