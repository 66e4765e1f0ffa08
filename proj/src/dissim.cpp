#include "protoselect/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "protoselect/errors.hpp"
#include "protoselect/kernels.hpp"

namespace protoselect {

namespace {

constexpr double kKernelSymmetryTol = 1e-9;
constexpr double kKernelNegativeTol = -1e-9;

}  // namespace

FeatureTable FeatureTable::create(Matrix m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw InvalidInputError("feature table must be nonempty");
  }
  if (!m.all_finite()) {
    throw InvalidInputError("feature table contains a non-finite value");
  }
  return FeatureTable{std::move(m)};
}

DissimilarityMatrix DissimilarityMatrix::create(Matrix m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw InvalidInputError("dissimilarity matrix must be nonempty");
  }
  for (const double v : m.data()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInputError("dissimilarity entries must be finite and nonnegative");
    }
  }
  return DissimilarityMatrix{std::move(m)};
}

KernelMatrix KernelMatrix::create(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidInputError("kernel matrix must be square and nonempty");
  }
  if (!m.all_finite()) {
    throw InvalidInputError("kernel matrix contains a non-finite value");
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (std::fabs(m(i, j) - m(j, i)) > kKernelSymmetryTol) {
        throw InvalidInputError("kernel matrix asymmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      }
    }
  }
  return KernelMatrix{std::move(m)};
}

DissimilarityMatrix compute_dissimilarity(const FeatureTable& features, Metric metric) {
  if (!features.values.all_finite()) {
    throw InvalidInputError("feature table contains a non-finite value");
  }
  const std::size_t n = features.size();
  const std::size_t p = features.dims();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = features.values.row(i).data();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* rj = features.values.row(j).data();
      const double v = metric == Metric::L2 ? std::sqrt(kernels::l2sq(ri, rj, p))
                                            : kernels::l1(ri, rj, p);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return DissimilarityMatrix{std::move(out)};
}

DissimilarityMatrix compute_cross_dissimilarity(const FeatureTable& points,
                                                const FeatureTable& candidates,
                                                Metric metric) {
  if (points.dims() != candidates.dims()) {
    throw InvalidInputError("points and candidates have different feature dimensions");
  }
  Matrix out = metric == Metric::L2
                   ? kernels::pairwise_l2(points.values, candidates.values, false)
                   : kernels::pairwise_l1(points.values, candidates.values);
  return DissimilarityMatrix{std::move(out)};
}

DissimilarityMatrix kernel_to_distance(const KernelMatrix& kernel) {
  const std::size_t n = kernel.size();
  const Matrix& k = kernel.values;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double arg = k(i, i) + k(j, j) - 2.0 * k(i, j);
      if (arg < kKernelNegativeTol) {
        throw InvalidInputError("kernel does not induce a distance: negative squared "
                                "distance at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      }
      const double v = std::sqrt(std::max(arg, 0.0));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return DissimilarityMatrix{std::move(out)};
}

DissimilarityMatrix rank_transform(const DissimilarityMatrix& d,
                                   const std::vector<std::size_t>& training_rows) {
  if (training_rows.empty()) {
    throw InvalidInputError("rank transform needs at least one training row");
  }
  for (const std::size_t r : training_rows) {
    if (r >= d.points()) {
      throw InvalidInputError("rank transform: training row out of range");
    }
  }
  const std::size_t n = d.points();
  const std::size_t m = d.candidates();
  Matrix out(n, m);
  std::vector<double> column(training_rows.size());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < training_rows.size(); ++t) {
      column[t] = d.values(training_rows[t], j);
    }
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < n; ++i) {
      const auto it = std::upper_bound(column.begin(), column.end(), d.values(i, j));
      out(i, j) = static_cast<double>(it - column.begin());
    }
  }
  return DissimilarityMatrix{std::move(out)};
}

std::vector<double> distance_quantiles(const DissimilarityMatrix& d,
                                       const std::vector<double>& probs) {
  if (probs.empty()) {
    throw InvalidInputError("quantiles: empty probability list");
  }
  for (const double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidInputError("quantiles: probability outside [0, 1]");
    }
  }
  const bool square = d.points() == d.candidates();
  std::vector<double> pool;
  pool.reserve(d.points() * d.candidates());
  for (std::size_t i = 0; i < d.points(); ++i) {
    for (std::size_t j = 0; j < d.candidates(); ++j) {
      if (square && i == j) {
        continue;  // self-distances
      }
      const double v = d.values(i, j);
      if (v > 0.0) {
        pool.push_back(v);  // duplicate points contribute zeros; skip them too
      }
    }
  }
  if (pool.empty()) {
    throw InvalidInputError("quantiles: no positive distances to pool");
  }
  std::sort(pool.begin(), pool.end());
  const double count = static_cast<double>(pool.size());
  std::vector<double> out;
  out.reserve(probs.size());
  for (const double p : probs) {
    std::size_t idx = 0;
    if (p > 0.0) {
      idx = static_cast<std::size_t>(std::ceil(p * count)) - 1;
      idx = std::min(idx, pool.size() - 1);
    }
    out.push_back(pool[idx]);
  }
  return out;
}

}  // namespace protoselect
