#pragma once

#include <cstddef>
#include <vector>

#include "protoselect/matrix.hpp"

namespace protoselect {

enum class Metric { L1, L2 };

// Raw feature vectors, one row per point.
struct FeatureTable {
  Matrix values;

  std::size_t size() const { return values.rows(); }
  std::size_t dims() const { return values.cols(); }

  // Validates: nonempty, all values finite.
  static FeatureTable create(Matrix m);
};

// Points-by-candidates dissimilarity matrix. Rectangular in general: rows are
// the points being covered/classified, columns are candidate prototypes.
// Entries are finite and nonnegative; symmetry is not assumed.
struct DissimilarityMatrix {
  Matrix values;

  std::size_t points() const { return values.rows(); }
  std::size_t candidates() const { return values.cols(); }

  static DissimilarityMatrix create(Matrix m);
};

// Square symmetric kernel (inner-product) matrix.
struct KernelMatrix {
  Matrix values;

  std::size_t size() const { return values.rows(); }

  // Validates: square, finite, symmetric within 1e-9.
  static KernelMatrix create(Matrix m);
};

// All pairwise distances between the table's own rows. Exactly symmetric with
// a zero diagonal (the upper triangle is computed once and mirrored).
DissimilarityMatrix compute_dissimilarity(const FeatureTable& features, Metric metric);

// Rectangular variant: rows of `points` against rows of `candidates`.
DissimilarityMatrix compute_cross_dissimilarity(const FeatureTable& points,
                                                const FeatureTable& candidates,
                                                Metric metric);

// Induced distance d(i,j) = sqrt(K_ii + K_jj - 2 K_ij). Tiny negative
// arguments (>= -1e-9, from rounding) are clamped to zero; anything more
// negative is rejected.
DissimilarityMatrix kernel_to_distance(const KernelMatrix& kernel);

// Rank dissimilarity: entry (i,j) becomes the number of training rows at
// least as close to candidate j, i.e. |{i' in training_rows : d(i',j) <= d(i,j)}|.
// Counts start at 1 because a training row matches itself.
DissimilarityMatrix rank_transform(const DissimilarityMatrix& d,
                                   const std::vector<std::size_t>& training_rows);

// Type-1 empirical quantiles of the positive entries (self-distance zeros and,
// for square matrices, the diagonal are excluded): Q(p) is the ceil(N*p)-th
// smallest pooled value, Q(0) the smallest.
std::vector<double> distance_quantiles(const DissimilarityMatrix& d,
                                       const std::vector<double>& probs);

}  // namespace protoselect
