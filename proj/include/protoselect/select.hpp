#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "protoselect/cover.hpp"
#include "protoselect/dissim.hpp"

namespace protoselect {

enum class SolverKind { Greedy, LpRounding };

// Where working dissimilarities come from. Exactly one of features/matrix is
// set: raw feature rows paired with a metric, or a precomputed square
// points-by-points matrix. use_rank replaces distances with training-rank
// counts; kmeans_k adds that many per-class centroids to the candidate set
// (feature sources only).
struct DissimilaritySource {
  std::optional<FeatureTable> features;
  Metric metric = Metric::L2;
  std::optional<DissimilarityMatrix> matrix;
  bool use_rank = false;
  std::optional<std::size_t> kmeans_k;
};

// Candidate feature rows after per-class K-means augmentation: the original
// table with L*K centroid rows appended (fewer for classes smaller than K).
// synthetic flags the appended rows, which are averages rather than actual
// examples.
struct AugmentedCandidates {
  FeatureTable table;
  std::vector<std::uint8_t> synthetic;
};

// Everything a training/query split needs from the source: dissimilarity
// rows of the training part and of the queries against the same candidate
// columns. Candidates are the training points (plus centroids when
// augmenting); held-out rows influence nothing but the query block.
struct CandidateBuild {
  DissimilarityMatrix train;                       // training rows x candidates
  Matrix query;                                    // query rows x candidates
  std::vector<std::uint8_t> synthetic;             // per candidate column
  std::optional<FeatureTable> candidate_features;  // feature sources only
};

// Cross-validation curve over an epsilon grid.
struct CvReport {
  std::vector<double> grid;
  std::vector<double> mean_error;
  std::vector<double> std_error;        // fold-error stdev / sqrt(folds)
  std::vector<double> mean_prototypes;
  std::vector<std::vector<double>> fold_errors;  // [grid index][fold]
  std::size_t folds = 0;
  double chosen_epsilon = 0.0;
};

// Stratified K-fold split: each class is shuffled under the seed and dealt
// round-robin, with the dealing offset rolling from class to class so fold
// sizes stay balanced globally. Returns K disjoint ascending index sets
// covering every point.
std::vector<std::vector<std::size_t>> make_folds(const LabeledDataset& dataset,
                                                 std::size_t k, std::uint64_t seed);

// Per-class Lloyd centroids appended to the feature table; class c draws its
// K-means seed as derive_seed(seed, c). Classes with fewer than k points
// contribute one centroid per point.
AugmentedCandidates augment_candidates_kmeans(const FeatureTable& features,
                                              const LabeledDataset& dataset,
                                              std::size_t k, std::uint64_t seed);

// Builds the working dissimilarities for one training/query split, using the
// training rows only: candidates, centroid augmentation, and the rank
// reference set all come from train_idx. Rank transforms stack the training
// and query rows, rank against the training rows, and split back apart.
CandidateBuild build_candidates(const DissimilaritySource& source,
                                const LabeledDataset& dataset,
                                const std::vector<std::size_t>& train_idx,
                                const std::vector<std::size_t>& query_idx,
                                std::uint64_t augment_seed);

// K-fold cross-validation of the selector over an ascending epsilon grid.
// Fold f rebuilds its candidates with augment seed derive_seed(seed, 1, f);
// the cell at grid index e and fold f hands a rounding solver
// derive_seed(seed, 2, e, f). A cell whose selection comes back empty scores
// error 1. chosen_epsilon applies the one-standard-error rule.
CvReport cross_validate(const LabeledDataset& dataset, const DissimilaritySource& source,
                        const std::vector<double>& grid, std::size_t folds,
                        double lambda, SolverKind solver, std::uint64_t seed);

// Largest epsilon whose mean error stays within one standard error of the
// best mean (ties for best resolved toward the smallest epsilon). Depends
// only on the (epsilon, mean, se) triples, not their order.
double one_se_rule(const CvReport& report);

// Default epsilon grid: the given number of equally spaced quantile levels
// from 0 to 0.5 of the positive entries of d, deduplicated.
std::vector<double> default_quantile_grid(const DissimilarityMatrix& d,
                                          std::size_t levels = 20);

}  // namespace protoselect
