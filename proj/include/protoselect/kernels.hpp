#pragma once

#include <cstddef>

#include "protoselect/matrix.hpp"

namespace protoselect::kernels {

enum class Isa { Scalar, Avx2 };

// ===== scalar reference kernels =====

double l2sq_scalar(const double* a, const double* b, std::size_t p);
double l1_scalar(const double* a, const double* b, std::size_t p);

#if defined(__x86_64__) && defined(__GNUC__)
// AVX2 variants compiled with per-function target attributes; only called
// after a runtime CPU check.
double l2sq_avx2(const double* a, const double* b, std::size_t p);
double l1_avx2(const double* a, const double* b, std::size_t p);
#endif

// ===== runtime dispatch =====

// Detected once on first use; force_isa overrides it (tests, benchmarking).
Isa active_isa();
void force_isa(Isa isa);
void reset_isa();

double l2sq(const double* a, const double* b, std::size_t p);
double l1(const double* a, const double* b, std::size_t p);

// rows(a) x rows(b) distance matrix through the active kernels.
Matrix pairwise_l2(const Matrix& a, const Matrix& b, bool squared);
Matrix pairwise_l1(const Matrix& a, const Matrix& b);

}  // namespace protoselect::kernels
