#include "protoselect/select.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "protoselect/classify.hpp"
#include "protoselect/errors.hpp"
#include "protoselect/greedy.hpp"
#include "protoselect/kmeans.hpp"
#include "protoselect/lpround.hpp"
#include "protoselect/rng.hpp"

namespace protoselect {

namespace {

// Seed stream tags: fold augmentation and per-cell solver randomness must
// never collide.
constexpr std::uint64_t kStreamAugment = 1;
constexpr std::uint64_t kStreamSolver = 2;

Matrix take_rows(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), m.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = m(idx[r], c);
    }
  }
  return out;
}

void check_index_set(const std::vector<std::size_t>& idx, std::size_t n,
                     const char* what, bool allow_empty) {
  if (idx.empty()) {
    if (!allow_empty) {
      throw InvalidInputError(std::string(what) + ": empty index set");
    }
    return;
  }
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= n) {
      throw InvalidInputError(std::string(what) + ": index " +
                              std::to_string(idx[r]) + " out of range");
    }
    if (r > 0 && idx[r] <= idx[r - 1]) {
      throw InvalidInputError(std::string(what) + ": indices must be strictly ascending");
    }
  }
}

void check_source(const DissimilaritySource& source, std::size_t n) {
  const bool has_features = source.features.has_value();
  const bool has_matrix = source.matrix.has_value();
  if (has_features == has_matrix) {
    throw InvalidInputError("source: exactly one of features or matrix must be set");
  }
  if (has_features && source.features->size() != n) {
    throw InvalidInputError("source: " + std::to_string(source.features->size()) +
                            " feature rows for " + std::to_string(n) + " points");
  }
  if (has_matrix) {
    if (source.matrix->points() != n || source.matrix->candidates() != n) {
      throw InvalidInputError("source: precomputed matrix must be " + std::to_string(n) +
                              " x " + std::to_string(n));
    }
    if (source.kmeans_k.has_value()) {
      throw InvalidInputError(
          "source: centroid augmentation needs feature vectors, not a precomputed matrix");
    }
  }
  if (source.kmeans_k.has_value() && *source.kmeans_k == 0) {
    throw InvalidInputError("source: kmeans_k must be positive");
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> make_folds(const LabeledDataset& dataset,
                                                 std::size_t k, std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (k < 2) {
    throw InvalidInputError("folds: need at least 2, got " + std::to_string(k));
  }
  if (k > n) {
    throw InvalidInputError("folds: " + std::to_string(k) + " folds for " +
                            std::to_string(n) + " points");
  }
  std::vector<std::vector<std::size_t>> folds(k);
  SplitMix64 rng(seed);
  std::size_t offset = 0;
  for (const std::vector<std::size_t>& members : dataset.class_index) {
    std::vector<std::size_t> shuffled = members;
    rng.shuffle(shuffled);
    for (const std::size_t point : shuffled) {
      folds[offset % k].push_back(point);
      ++offset;
    }
  }
  for (std::vector<std::size_t>& fold : folds) {
    std::sort(fold.begin(), fold.end());
  }
  return folds;
}

AugmentedCandidates augment_candidates_kmeans(const FeatureTable& features,
                                              const LabeledDataset& dataset,
                                              std::size_t k, std::uint64_t seed) {
  if (features.size() != dataset.size()) {
    throw InvalidInputError("kmeans augmentation: feature/label size mismatch");
  }
  if (k == 0) {
    throw InvalidInputError("kmeans augmentation: k must be positive");
  }

  std::vector<Matrix> centroid_blocks;
  std::size_t extra = 0;
  for (int c = 0; c < dataset.num_classes; ++c) {
    const std::vector<std::size_t>& members = dataset.class_index[static_cast<std::size_t>(c)];
    const std::size_t kc = std::min(k, members.size());
    const KmeansResult km =
        lloyd_kmeans(take_rows(features.values, members), kc,
                     derive_seed(seed, static_cast<std::uint64_t>(c)));
    extra += km.centroids.rows();
    centroid_blocks.push_back(km.centroids);
  }

  const std::size_t n = features.size();
  const std::size_t dims = features.dims();
  Matrix table(n + extra, dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      table(i, d) = features.values(i, d);
    }
  }
  AugmentedCandidates out;
  out.synthetic.assign(n + extra, 0);
  std::size_t row = n;
  for (const Matrix& block : centroid_blocks) {
    for (std::size_t i = 0; i < block.rows(); ++i, ++row) {
      for (std::size_t d = 0; d < dims; ++d) {
        table(row, d) = block(i, d);
      }
      out.synthetic[row] = 1;
    }
  }
  out.table = FeatureTable::create(std::move(table));
  return out;
}

CandidateBuild build_candidates(const DissimilaritySource& source,
                                const LabeledDataset& dataset,
                                const std::vector<std::size_t>& train_idx,
                                const std::vector<std::size_t>& query_idx,
                                std::uint64_t augment_seed) {
  const std::size_t n = dataset.size();
  check_source(source, n);
  check_index_set(train_idx, n, "training split", false);
  check_index_set(query_idx, n, "query split", true);

  const std::size_t t = train_idx.size();
  const std::size_t q = query_idx.size();

  CandidateBuild build;
  Matrix stacked;  // (train + query) rows x candidates

  if (source.features.has_value()) {
    Matrix train_feats = take_rows(source.features->values, train_idx);
    FeatureTable candidates = FeatureTable::create(train_feats);
    build.synthetic.assign(t, 0);
    if (source.kmeans_k.has_value()) {
      std::vector<int> train_labels(t);
      for (std::size_t r = 0; r < t; ++r) {
        train_labels[r] = dataset.labels[train_idx[r]];
      }
      const AugmentedCandidates augmented = augment_candidates_kmeans(
          candidates, LabeledDataset::create(train_labels, dataset.num_classes),
          *source.kmeans_k, augment_seed);
      candidates = augmented.table;
      build.synthetic = augmented.synthetic;
    }

    Matrix probe_rows(t + q, source.features->dims());
    for (std::size_t r = 0; r < t; ++r) {
      for (std::size_t d = 0; d < probe_rows.cols(); ++d) {
        probe_rows(r, d) = source.features->values(train_idx[r], d);
      }
    }
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t d = 0; d < probe_rows.cols(); ++d) {
        probe_rows(t + r, d) = source.features->values(query_idx[r], d);
      }
    }
    stacked = compute_cross_dissimilarity(FeatureTable::create(std::move(probe_rows)),
                                          candidates, source.metric)
                  .values;
    build.candidate_features = std::move(candidates);
  } else {
    const Matrix& d = source.matrix->values;
    stacked = Matrix(t + q, t);
    for (std::size_t r = 0; r < t; ++r) {
      for (std::size_t c = 0; c < t; ++c) {
        stacked(r, c) = d(train_idx[r], train_idx[c]);
      }
    }
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t c = 0; c < t; ++c) {
        stacked(t + r, c) = d(query_idx[r], train_idx[c]);
      }
    }
    build.synthetic.assign(t, 0);
  }

  if (source.use_rank) {
    std::vector<std::size_t> training_rows(t);
    for (std::size_t r = 0; r < t; ++r) {
      training_rows[r] = r;
    }
    stacked = rank_transform(DissimilarityMatrix::create(std::move(stacked)),
                             training_rows)
                  .values;
  }

  const std::size_t m = stacked.cols();
  Matrix train_block(t, m);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      train_block(r, c) = stacked(r, c);
    }
  }
  build.train = DissimilarityMatrix::create(std::move(train_block));
  build.query = Matrix(q, m);
  for (std::size_t r = 0; r < q; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      build.query(r, c) = stacked(t + r, c);
    }
  }
  return build;
}

CvReport cross_validate(const LabeledDataset& dataset, const DissimilaritySource& source,
                        const std::vector<double>& grid, std::size_t folds,
                        double lambda, SolverKind solver, std::uint64_t seed) {
  if (grid.empty()) {
    throw InvalidInputError("cross-validation: empty epsilon grid");
  }
  for (std::size_t e = 0; e < grid.size(); ++e) {
    if (!(grid[e] > 0.0) || !std::isfinite(grid[e])) {
      throw InvalidInputError("cross-validation: epsilon values must be positive");
    }
    if (e > 0 && grid[e] <= grid[e - 1]) {
      throw InvalidInputError("cross-validation: epsilon grid must be strictly ascending");
    }
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInputError("cross-validation: lambda must be finite and nonnegative");
  }
  check_source(source, dataset.size());

  const std::vector<std::vector<std::size_t>> fold_sets = make_folds(dataset, folds, seed);

  CvReport report;
  report.grid = grid;
  report.folds = folds;
  report.fold_errors.assign(grid.size(), std::vector<double>(folds, 0.0));
  std::vector<std::vector<long long>> counts(grid.size(),
                                             std::vector<long long>(folds, 0));

  std::vector<std::uint8_t> in_query(dataset.size());
  for (std::size_t f = 0; f < folds; ++f) {
    std::fill(in_query.begin(), in_query.end(), 0);
    for (const std::size_t point : fold_sets[f]) {
      in_query[point] = 1;
    }
    std::vector<std::size_t> train_idx;
    train_idx.reserve(dataset.size() - fold_sets[f].size());
    for (std::size_t point = 0; point < dataset.size(); ++point) {
      if (!in_query[point]) {
        train_idx.push_back(point);
      }
    }

    std::vector<int> train_labels(train_idx.size());
    std::vector<long long> class_present(static_cast<std::size_t>(dataset.num_classes), 0);
    for (std::size_t r = 0; r < train_idx.size(); ++r) {
      train_labels[r] = dataset.labels[train_idx[r]];
      ++class_present[static_cast<std::size_t>(train_labels[r])];
    }
    for (int c = 0; c < dataset.num_classes; ++c) {
      if (class_present[static_cast<std::size_t>(c)] == 0) {
        throw InvalidInputError("cross-validation: fold " + std::to_string(f) +
                                " leaves no training points of class " +
                                std::to_string(c));
      }
    }

    const CandidateBuild build =
        build_candidates(source, dataset, train_idx, fold_sets[f],
                         derive_seed(seed, kStreamAugment, f));
    const LabeledDataset train_dataset =
        LabeledDataset::create(train_labels, dataset.num_classes);

    for (std::size_t e = 0; e < grid.size(); ++e) {
      const PrototypeProblem problem{train_dataset,
                                     build_incidence(build.train, grid[e]), lambda};
      const PrototypeSolution solution =
          solver == SolverKind::Greedy
              ? solve_greedy(problem)
              : solve_lp_rounding(problem, derive_seed(seed, kStreamSolver, e, f))
                    .solution;
      counts[e][f] = solution.prototype_total;

      // An empty selection has no usable decision rule; every held-out point
      // counts as an error.
      double error = 1.0;
      if (solution.prototype_total > 0) {
        const std::vector<Prediction> preds = predict(solution, build.query);
        long long wrong = 0;
        for (std::size_t r = 0; r < fold_sets[f].size(); ++r) {
          if (preds[r].label != dataset.labels[fold_sets[f][r]]) {
            ++wrong;
          }
        }
        error = static_cast<double>(wrong) /
                static_cast<double>(fold_sets[f].size());
      }
      report.fold_errors[e][f] = error;
    }
  }

  const double k = static_cast<double>(folds);
  report.mean_error.resize(grid.size());
  report.std_error.resize(grid.size());
  report.mean_prototypes.resize(grid.size());
  for (std::size_t e = 0; e < grid.size(); ++e) {
    double mean = 0.0;
    for (const double v : report.fold_errors[e]) {
      mean += v;
    }
    mean /= k;
    double variance = 0.0;
    for (const double v : report.fold_errors[e]) {
      variance += (v - mean) * (v - mean);
    }
    variance /= (k - 1.0);
    report.mean_error[e] = mean;
    report.std_error[e] = std::sqrt(variance) / std::sqrt(k);
    long long protos = 0;
    for (const long long c : counts[e]) {
      protos += c;
    }
    report.mean_prototypes[e] = static_cast<double>(protos) / k;
  }
  report.chosen_epsilon = one_se_rule(report);
  return report;
}

double one_se_rule(const CvReport& report) {
  const std::size_t g = report.grid.size();
  if (g == 0 || report.mean_error.size() != g || report.std_error.size() != g) {
    throw InvalidInputError("one-se rule: unpopulated report");
  }
  std::size_t best = 0;
  for (std::size_t e = 1; e < g; ++e) {
    if (report.mean_error[e] < report.mean_error[best] ||
        (report.mean_error[e] == report.mean_error[best] &&
         report.grid[e] < report.grid[best])) {
      best = e;
    }
  }
  const double threshold = report.mean_error[best] + report.std_error[best];
  double chosen = report.grid[best];
  for (std::size_t e = 0; e < g; ++e) {
    if (report.mean_error[e] <= threshold && report.grid[e] > chosen) {
      chosen = report.grid[e];
    }
  }
  return chosen;
}

std::vector<double> default_quantile_grid(const DissimilarityMatrix& d,
                                          std::size_t levels) {
  if (levels < 2) {
    throw InvalidInputError("epsilon grid: need at least 2 quantile levels");
  }
  std::vector<double> probs(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    probs[i] = 0.5 * static_cast<double>(i) / static_cast<double>(levels - 1);
  }
  const std::vector<double> values = distance_quantiles(d, probs);
  std::vector<double> grid;
  for (const double v : values) {
    if (grid.empty() || v > grid.back()) {
      grid.push_back(v);
    }
  }
  return grid;
}

}  // namespace protoselect
