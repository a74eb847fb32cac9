#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "aggvote/core.hpp"
#include "aggvote/random.hpp"

namespace aggvote {

enum class ExpertType { Knn, Fisher, Forest };

std::string expert_type_name(ExpertType t);
ExpertType expert_type_from_name(const std::string& name);

// Declarative description of one base classifier. Only the fields for the
// chosen type are read; the rest keep their defaults.
struct ExpertSpec {
  ExpertType type = ExpertType::Knn;

  // kNN
  std::size_t k = 5;
  std::optional<Metric> metric;  // default: metric of the training data kind

  // Fisher linear discriminant
  double ridge = 0.0;

  // Random forest
  std::size_t n_trees = 100;
  std::size_t mtry = 0;  // 0: ceil(sqrt(d)) resolved at fit time
  std::uint64_t forest_seed = 0;
  bool forest_seed_fixed = false;  // true: reuse forest_seed instead of drawing
};

struct KnnState {
  std::shared_ptr<const Dataset> train;
  std::size_t k = 1;
  Metric metric;
};

struct FisherState {
  std::vector<double> weights;
  double threshold = 0.0;
  bool ridge_fallback = false;  // singular covariance forced an automatic ridge
};

struct TreeNode {
  int feature = -1;  // -1: leaf
  double split = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;  // leaves only
};

struct ForestState {
  std::vector<std::vector<TreeNode>> trees;
  std::size_t mtry = 0;
  std::uint64_t seed = 0;
};

// A fitted base classifier. Construction happens through the fit_* factories
// or fit_roster; prediction is pure and thread-safe.
class BaseClassifier {
 public:
  static BaseClassifier fit_knn(std::shared_ptr<const Dataset> train,
                                std::size_t k, std::optional<Metric> metric);
  static BaseClassifier fit_fisher(const Dataset& train, double ridge);
  static BaseClassifier fit_forest(const Dataset& train, std::size_t n_trees,
                                   std::size_t mtry, std::uint64_t seed);

  int predict(const FeatureObject& x) const;
  std::string name() const;
  ExpertType type() const { return spec_.type; }
  std::size_t input_dim() const { return input_dim_; }
  FeatureKind input_kind() const { return input_kind_; }

  // Spec with every randomly resolved field (forest seed, mtry) filled in,
  // so a fit can be reproduced exactly.
  const ExpertSpec& spec() const { return spec_; }

  const KnnState* knn() const;
  const FisherState* fisher() const;
  const ForestState* forest() const;

 private:
  BaseClassifier() = default;

  ExpertSpec spec_;
  std::size_t input_dim_ = 0;
  FeatureKind input_kind_ = FeatureKind::Vector;
  KnnState knn_state_;
  FisherState fisher_state_;
  ForestState forest_state_;
};

// Fits every spec against the same training sample. Forest seeds without a
// fixed value are drawn from the stream in roster order.
std::vector<BaseClassifier> fit_roster(std::span<const ExpertSpec> specs,
                                       std::shared_ptr<const Dataset> train,
                                       RandomStream& stream);

// Exact k nearest neighbor vote. Distance ties prefer the lower training
// index; an even split between labels falls back to the single nearest
// neighbor's label.
int knn_predict(const Dataset& train, const FeatureObject& x, std::size_t k,
                Metric metric);

// Gaussian kernel smoother on a fixed design. Rows are output grid points,
// columns input grid points, each row normalized to sum one. A bandwidth so
// small that some row underflows to zero is rejected.
std::vector<std::vector<double>> nw_weight_matrix(
    const std::vector<double>& in_grid, const std::vector<double>& out_grid,
    double bandwidth);

struct SmootherConfig {
  double bandwidth = 0.1;
  std::vector<double> output_grid;  // empty: reuse the input grid
};

FeatureObject nw_smooth(const FeatureObject& curve, const SmootherConfig& cfg);

// Applies a precomputed weight matrix, for callers smoothing many curves on
// one shared grid.
FeatureObject nw_apply(const std::vector<std::vector<double>>& weights,
                       const std::vector<double>& out_grid,
                       const FeatureObject& curve);

}  // namespace aggvote
