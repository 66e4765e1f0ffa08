#pragma once

#include <cstdint>
#include <vector>

#include "protoselect/matrix.hpp"

namespace protoselect {

struct KmeansResult {
  Matrix centroids;                     // k x dims
  std::vector<std::size_t> assignment;  // nearest centroid per input row
  std::vector<double> sse_history;      // within-cluster sum of squares per iteration
  std::size_t iterations = 0;
};

// Lloyd's algorithm with seeded initialization from k distinct input rows.
// Assignment ties go to the lowest centroid index; a cluster that empties is
// repaired by handing it the point currently farthest from its centroid.
// Stops when the assignment is stable or after max_iterations.
KmeansResult lloyd_kmeans(const Matrix& rows, std::size_t k, std::uint64_t seed,
                          std::size_t max_iterations = 100);

}  // namespace protoselect
