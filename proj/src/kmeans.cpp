#include "protoselect/kmeans.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "protoselect/errors.hpp"
#include "protoselect/kernels.hpp"
#include "protoselect/rng.hpp"

namespace protoselect {

namespace {

double sum_of_squares(const Matrix& rows, const Matrix& centroids,
                      const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    total += kernels::l2sq(rows.row(i).data(), centroids.row(assignment[i]).data(),
                           rows.cols());
  }
  return total;
}

}  // namespace

KmeansResult lloyd_kmeans(const Matrix& rows, std::size_t k, std::uint64_t seed,
                          std::size_t max_iterations) {
  const std::size_t n = rows.rows();
  if (n == 0) {
    throw InvalidInputError("kmeans: no input rows");
  }
  if (k == 0 || k > n) {
    throw InvalidInputError("kmeans: k = " + std::to_string(k) + " with " +
                            std::to_string(n) + " rows");
  }
  if (!rows.all_finite()) {
    throw InvalidInputError("kmeans: non-finite input row");
  }
  const std::size_t dims = rows.cols();

  // Seed centroids from k distinct row indices.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  rng.shuffle(order);
  KmeansResult result;
  result.centroids = Matrix(k, dims);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < dims; ++d) {
      result.centroids(c, d) = rows(order[c], d);
    }
  }
  result.assignment.assign(n, 0);

  std::vector<std::size_t> previous(n, n);  // sentinel forcing a first pass
  std::vector<std::size_t> sizes(k);
  while (result.iterations < max_iterations) {
    // Assign to the nearest centroid, lowest index on ties.
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double dist =
            kernels::l2sq(rows.row(i).data(), result.centroids.row(c).data(), dims);
        if (dist < best) {
          best = dist;
          best_c = c;
        }
      }
      result.assignment[i] = best_c;
    }

    // Hand each empty cluster the point farthest from its centroid.
    std::fill(sizes.begin(), sizes.end(), 0);
    for (const std::size_t c : result.assignment) {
      ++sizes[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        continue;
      }
      double farthest = -1.0;
      std::size_t moved = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[result.assignment[i]] <= 1) {
          continue;  // never empty another cluster
        }
        const double dist = kernels::l2sq(
            rows.row(i).data(), result.centroids.row(result.assignment[i]).data(), dims);
        if (dist > farthest) {
          farthest = dist;
          moved = i;
        }
      }
      --sizes[result.assignment[moved]];
      result.assignment[moved] = c;
      ++sizes[c];
    }

    // Update step: centroids become their members' means.
    result.centroids = Matrix(k, dims);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dims; ++d) {
        result.centroids(result.assignment[i], d) += rows(i, d);
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t d = 0; d < dims; ++d) {
        result.centroids(c, d) /= static_cast<double>(sizes[c]);
      }
    }

    ++result.iterations;
    result.sse_history.push_back(sum_of_squares(rows, result.centroids,
                                                result.assignment));
    if (result.assignment == previous) {
      break;
    }
    previous = result.assignment;
  }
  return result;
}

}  // namespace protoselect
