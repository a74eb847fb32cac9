#pragma once

#include <span>
#include <string>
#include <vector>

#include "aggvote/aggregate.hpp"
#include "aggvote/core.hpp"
#include "aggvote/learners.hpp"
#include "aggvote/random.hpp"

namespace aggvote {

// Search grid for the aggregation parameters: the disagreement budget alpha
// and the vote-sample size carved off the end of the training part.
struct CvGrid {
  std::vector<double> alphas;
  std::vector<std::size_t> vote_sizes;
  std::size_t folds = 5;
};

struct CvPoint {
  double alpha = 0.0;
  std::size_t vote_size = 0;
  std::vector<double> fold_errors;
  double mean_error = 0.0;
  bool skipped = false;
  std::string note;  // reason when skipped
};

struct CvResult {
  std::vector<CvPoint> points;      // grid order: vote size outer, alpha inner
  std::vector<std::size_t> argmin;  // indices of points attaining the minimum
  double best_error = 0.0;
  double chosen_alpha = 0.0;
  std::size_t chosen_vote_size = 0;
};

// V-fold cross-validation over (alpha, vote size). Folds come from one
// shuffle of the sample; within a fold's training part, the first
// part fits the experts and the last vote_size points feed the vote table,
// refit per (fold, vote size). Ties prefer the smallest vote size, then the
// smallest alpha. Vote sizes leaving no room to fit the experts are skipped
// and carry a note.
CvResult cv_alpha_vote_size(const Dataset& d, std::span<const ExpertSpec> roster,
                            const CvGrid& grid, RandomStream& stream);

// One row per grid point: alpha, vote size, per-fold errors, mean.
std::string cv_result_csv(const CvResult& r);

struct CvKnnResult {
  std::vector<std::size_t> candidates;
  std::vector<double> mean_errors;
  std::size_t chosen_k = 0;
  double best_error = 0.0;
};

// V-fold choice of the neighbor count. All candidates share one distance
// pass per held-out point. Ties prefer the smallest k.
CvKnnResult cv_knn(const Dataset& d, std::span<const std::size_t> candidates,
                   Metric metric, std::size_t folds, RandomStream& stream);

struct BandwidthCvOptions {
  std::vector<double> grid_label1;  // candidate bandwidths, class y=1
  std::vector<double> grid_label0;  // candidate bandwidths, class y=0
  std::vector<ExpertSpec> roster;
  double alpha = 0.0;
  std::size_t vote_size = 0;
  std::size_t folds = 5;
};

struct BandwidthChoice {
  double h_label1 = 0.0;
  double h_label0 = 0.0;
  double cv_error = 0.0;
  std::vector<std::string> warnings;  // skipped pairs
};

// Per-class smoother bandwidth selection for curve data. Each candidate pair
// smooths the training curves class-wise, the aggregated classifier is
// cross-validated against raw held-out curves, and the best pair wins. Ties
// prefer the smallest h for class 1, then for class 0.
BandwidthChoice cv_bandwidths(const Dataset& train,
                              const BandwidthCvOptions& options,
                              RandomStream& stream);

// Fold assignment shared by the searches: one shuffle, then V nearly equal
// blocks. Returned as per-fold index lists into d.
std::vector<std::vector<std::size_t>> cv_folds(std::size_t n,
                                               std::size_t folds,
                                               RandomStream& stream);

}  // namespace aggvote
