#include "aggvote/learners.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aggvote {

namespace {

double squared_distance(const FeatureObject& a, const FeatureObject& b,
                        Metric m, const std::vector<double>& curve_weights) {
  switch (m.kind) {
    case MetricKind::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
      }
      return s;
    }
    case MetricKind::Linf: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        s = std::max(s, std::abs(a.values[i] - b.values[i]));
      }
      return s * s;
    }
    case MetricKind::CurveL2: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += curve_weights[i] * d * d;
      }
      return s;
    }
  }
  return 0.0;
}

std::vector<double> metric_weights(const Dataset& train, Metric m) {
  if (m.kind == MetricKind::CurveL2) {
    if (train.kind() != FeatureKind::Curve) {
      throw DataError("CurveL2 metric requires curve data");
    }
    return trapezoid_weights(train.grid());
  }
  return {};
}

}  // namespace

std::string expert_type_name(ExpertType t) {
  switch (t) {
    case ExpertType::Knn:
      return "knn";
    case ExpertType::Fisher:
      return "fisher";
    case ExpertType::Forest:
      return "forest";
  }
  return "knn";
}

ExpertType expert_type_from_name(const std::string& name) {
  if (name == "knn") return ExpertType::Knn;
  if (name == "fisher") return ExpertType::Fisher;
  if (name == "forest") return ExpertType::Forest;
  throw ConfigError("unknown expert type '" + name + "'");
}

int knn_predict(const Dataset& train, const FeatureObject& x, std::size_t k,
                Metric metric) {
  if (k == 0 || k > train.size()) {
    throw ConfigError("knn: k=" + std::to_string(k) + " with " +
                      std::to_string(train.size()) + " training points");
  }
  const std::vector<double> weights = metric_weights(train, metric);
  std::vector<std::pair<double, std::size_t>> order(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    order[i] = {squared_distance(train[i].x, x, metric, weights), i};
  }
  // Pair comparison breaks distance ties toward the lower training index.
  std::nth_element(order.begin(), order.begin() + (k - 1), order.end());
  std::sort(order.begin(), order.begin() + k);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < k; ++i) ones += train[order[i].second].y != 0;
  if (2 * ones > k) return 1;
  if (2 * ones < k) return 0;
  return train[order[0].second].y;
}

BaseClassifier BaseClassifier::fit_knn(std::shared_ptr<const Dataset> train,
                                       std::size_t k,
                                       std::optional<Metric> metric) {
  if (!train || train->empty()) throw ConfigError("knn: empty training sample");
  if (k == 0 || k > train->size()) {
    throw ConfigError("knn: k=" + std::to_string(k) + " with " +
                      std::to_string(train->size()) + " training points");
  }
  BaseClassifier c;
  c.spec_.type = ExpertType::Knn;
  c.spec_.k = k;
  const Metric m = metric.value_or(default_metric(train->kind()));
  c.spec_.metric = m;
  c.input_dim_ = train->dim();
  c.input_kind_ = train->kind();
  c.knn_state_ = {std::move(train), k, m};
  return c;
}

BaseClassifier BaseClassifier::fit_fisher(const Dataset& train, double ridge) {
  if (train.empty()) throw ConfigError("fisher: empty training sample");
  if (ridge < 0.0) throw ConfigError("fisher: negative ridge");
  const std::size_t d = train.dim();
  const std::int64_t n1 = train.positives();
  const std::int64_t n0 = static_cast<std::int64_t>(train.size()) - n1;
  if (n0 == 0 || n1 == 0) {
    throw DataError("fisher: training sample has a single class");
  }

  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(d);
  for (const LabeledPoint& p : train.points()) {
    Eigen::Map<const Eigen::VectorXd> x(p.x.values.data(), d);
    (p.y != 0 ? mu1 : mu0) += x;
  }
  mu0 /= static_cast<double>(n0);
  mu1 /= static_cast<double>(n1);

  // Pooled covariance with the (n - 2) divisor.
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  for (const LabeledPoint& p : train.points()) {
    Eigen::Map<const Eigen::VectorXd> x(p.x.values.data(), d);
    Eigen::VectorXd c = x - (p.y != 0 ? mu1 : mu0);
    sigma.noalias() += c * c.transpose();
  }
  sigma /= static_cast<double>(train.size() - 2);

  FisherState state;
  double effective_ridge = ridge;
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd a = sigma;
    if (effective_ridge > 0.0) {
      a.diagonal().array() += effective_ridge;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    Eigen::VectorXd w;
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
      w = ldlt.solve(mu1 - mu0);
      ok = w.allFinite() && (a * w - (mu1 - mu0)).norm() <=
                                1e-6 * (1.0 + (mu1 - mu0).norm());
    }
    if (ok) {
      state.weights.assign(w.data(), w.data() + d);
      state.threshold = 0.5 * w.dot(mu0 + mu1) -
                        std::log(static_cast<double>(n1) /
                                 static_cast<double>(n0));
      break;
    }
    if (attempt > 0) {
      throw DataError("fisher: covariance solve failed even with ridge");
    }
    // Singular pooled covariance: retry once with a trace-scaled ridge.
    state.ridge_fallback = true;
    const double trace = sigma.trace();
    effective_ridge = std::max(1e-8 * trace / static_cast<double>(d), 1e-12);
  }

  BaseClassifier c;
  c.spec_.type = ExpertType::Fisher;
  c.spec_.ridge = ridge;
  c.input_dim_ = d;
  c.input_kind_ = train.kind();
  c.fisher_state_ = std::move(state);
  return c;
}

namespace {

struct TreeBuilder {
  const Dataset& train;
  std::size_t mtry;
  RandomStream& stream;
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> features;  // scratch for per-node draws

  int build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi) {
    std::int64_t ones = 0;
    for (std::size_t i = lo; i < hi; ++i) ones += train[idx[i]].y != 0;
    const std::int64_t count = static_cast<std::int64_t>(hi - lo);
    if (ones == 0 || ones == count || count < 2) {
      TreeNode leaf;
      leaf.label = 2 * ones > count ? 1 : 0;
      nodes.push_back(leaf);
      return static_cast<int>(nodes.size() - 1);
    }

    // Draw mtry distinct candidate features for this node.
    const std::size_t d = train.dim();
    features.resize(d);
    std::iota(features.begin(), features.end(), std::size_t{0});
    for (std::size_t i = 0; i < mtry; ++i) {
      const std::size_t j = i + stream.uniform_index(d - i);
      std::swap(features[i], features[j]);
    }

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_split = 0.0;
    std::vector<std::pair<double, int>> vals;
    vals.reserve(hi - lo);
    for (std::size_t fi = 0; fi < mtry; ++fi) {
      const std::size_t f = features[fi];
      vals.clear();
      for (std::size_t i = lo; i < hi; ++i) {
        vals.emplace_back(train[idx[i]].x.values[f], train[idx[i]].y);
      }
      std::sort(vals.begin(), vals.end());
      std::int64_t left_n = 0, left_ones = 0;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        ++left_n;
        left_ones += vals[i].second != 0;
        if (vals[i].first == vals[i + 1].first) continue;
        const std::int64_t right_n = count - left_n;
        const std::int64_t right_ones = ones - left_ones;
        const double pl = static_cast<double>(left_ones) / left_n;
        const double pr = static_cast<double>(right_ones) / right_n;
        const double impurity = left_n * 2.0 * pl * (1.0 - pl) +
                                right_n * 2.0 * pr * (1.0 - pr);
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = static_cast<int>(f);
          best_split = 0.5 * (vals[i].first + vals[i + 1].first);
        }
      }
    }

    if (best_feature < 0) {
      // Every candidate feature is constant on this node.
      TreeNode leaf;
      leaf.label = 2 * ones > count ? 1 : 0;
      nodes.push_back(leaf);
      return static_cast<int>(nodes.size() - 1);
    }

    const auto goes_left = [&](std::size_t i) {
      return train[idx[i]].x.values[best_feature] <= best_split;
    };
    std::size_t mid = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (goes_left(i)) std::swap(idx[i], idx[mid++]);
    }
    if (mid == lo || mid == hi) {
      TreeNode leaf;
      leaf.label = 2 * ones > count ? 1 : 0;
      nodes.push_back(leaf);
      return static_cast<int>(nodes.size() - 1);
    }

    const std::size_t self = nodes.size();
    nodes.emplace_back();
    nodes[self].feature = best_feature;
    nodes[self].split = best_split;
    const int left = build(idx, lo, mid);
    const int right = build(idx, mid, hi);
    nodes[self].left = left;
    nodes[self].right = right;
    return static_cast<int>(self);
  }
};

int tree_predict(const std::vector<TreeNode>& tree, const FeatureObject& x) {
  int at = 0;
  while (tree[at].feature >= 0) {
    at = x.values[tree[at].feature] <= tree[at].split ? tree[at].left
                                                      : tree[at].right;
  }
  return tree[at].label;
}

}  // namespace

BaseClassifier BaseClassifier::fit_forest(const Dataset& train,
                                          std::size_t n_trees,
                                          std::size_t mtry,
                                          std::uint64_t seed) {
  if (train.empty()) throw ConfigError("forest: empty training sample");
  if (n_trees == 0) throw ConfigError("forest: n_trees must be positive");
  const std::size_t d = train.dim();
  std::size_t resolved_mtry = mtry;
  if (resolved_mtry == 0) {
    resolved_mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(d))));
  }
  if (resolved_mtry > d) {
    throw ConfigError("forest: mtry exceeds the feature count");
  }

  ForestState state;
  state.mtry = resolved_mtry;
  state.seed = seed;
  state.trees.reserve(n_trees);
  const std::size_t n = train.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t t = 0; t < n_trees; ++t) {
    RandomStream stream(mix_seed(seed, t));
    for (std::size_t i = 0; i < n; ++i) idx[i] = stream.uniform_index(n);
    TreeBuilder builder{train, resolved_mtry, stream, {}, {}};
    builder.build(idx, 0, n);
    state.trees.push_back(std::move(builder.nodes));
  }

  BaseClassifier c;
  c.spec_.type = ExpertType::Forest;
  c.spec_.n_trees = n_trees;
  c.spec_.mtry = resolved_mtry;
  c.spec_.forest_seed = seed;
  c.spec_.forest_seed_fixed = true;
  c.input_dim_ = d;
  c.input_kind_ = train.kind();
  c.forest_state_ = std::move(state);
  return c;
}

int BaseClassifier::predict(const FeatureObject& x) const {
  if (x.dim() != input_dim_ || x.kind != input_kind_) {
    throw DataError("query does not match the training data: expected " +
                    std::to_string(input_dim_) + " values of kind " +
                    std::string(input_kind_ == FeatureKind::Curve ? "curve"
                                                                  : "vector"));
  }
  switch (spec_.type) {
    case ExpertType::Knn:
      return knn_predict(*knn_state_.train, x, knn_state_.k, knn_state_.metric);
    case ExpertType::Fisher: {
      double s = 0.0;
      for (std::size_t i = 0; i < fisher_state_.weights.size(); ++i) {
        s += fisher_state_.weights[i] * x.values[i];
      }
      return s > fisher_state_.threshold ? 1 : 0;
    }
    case ExpertType::Forest: {
      std::size_t ones = 0;
      for (const std::vector<TreeNode>& tree : forest_state_.trees) {
        ones += tree_predict(tree, x) != 0;
      }
      return 2 * ones > forest_state_.trees.size() ? 1 : 0;
    }
  }
  return 0;
}

std::string BaseClassifier::name() const {
  switch (spec_.type) {
    case ExpertType::Knn:
      return std::to_string(spec_.k) + "nn";
    case ExpertType::Fisher:
      return "fisher";
    case ExpertType::Forest:
      return "forest" + std::to_string(spec_.n_trees);
  }
  return "unknown";
}

const KnnState* BaseClassifier::knn() const {
  return spec_.type == ExpertType::Knn ? &knn_state_ : nullptr;
}

const FisherState* BaseClassifier::fisher() const {
  return spec_.type == ExpertType::Fisher ? &fisher_state_ : nullptr;
}

const ForestState* BaseClassifier::forest() const {
  return spec_.type == ExpertType::Forest ? &forest_state_ : nullptr;
}

std::vector<BaseClassifier> fit_roster(std::span<const ExpertSpec> specs,
                                       std::shared_ptr<const Dataset> train,
                                       RandomStream& stream) {
  if (!train || train->empty()) {
    throw ConfigError("fit_roster: empty training sample");
  }
  if (specs.empty()) throw ConfigError("fit_roster: empty roster");
  std::vector<BaseClassifier> out;
  out.reserve(specs.size());
  for (const ExpertSpec& spec : specs) {
    switch (spec.type) {
      case ExpertType::Knn:
        out.push_back(BaseClassifier::fit_knn(train, spec.k, spec.metric));
        break;
      case ExpertType::Fisher:
        out.push_back(BaseClassifier::fit_fisher(*train, spec.ridge));
        break;
      case ExpertType::Forest: {
        const std::uint64_t seed =
            spec.forest_seed_fixed ? spec.forest_seed : stream.next_u64();
        out.push_back(
            BaseClassifier::fit_forest(*train, spec.n_trees, spec.mtry, seed));
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> nw_weight_matrix(
    const std::vector<double>& in_grid, const std::vector<double>& out_grid,
    double bandwidth) {
  if (!(bandwidth > 0.0)) throw ConfigError("smoother: bandwidth must be positive");
  if (in_grid.empty() || out_grid.empty()) {
    throw ConfigError("smoother: empty grid");
  }
  std::vector<std::vector<double>> weights(out_grid.size());
  for (std::size_t r = 0; r < out_grid.size(); ++r) {
    const double t = out_grid[r];
    std::vector<double>& row = weights[r];
    row.resize(in_grid.size());
    double sum = 0.0;
    for (std::size_t c = 0; c < in_grid.size(); ++c) {
      const double u = (t - in_grid[c]) / bandwidth;
      row[c] = std::exp(-0.5 * u * u);
      sum += row[c];
    }
    if (!(sum > 0.0)) {
      throw ConfigError("smoother: kernel weights vanish at t=" +
                        std::to_string(t) + " with bandwidth " +
                        std::to_string(bandwidth));
    }
    for (double& w : row) w /= sum;
  }
  return weights;
}

FeatureObject nw_apply(const std::vector<std::vector<double>>& weights,
                       const std::vector<double>& out_grid,
                       const FeatureObject& curve) {
  std::vector<double> smoothed(out_grid.size());
  for (std::size_t r = 0; r < out_grid.size(); ++r) {
    double s = 0.0;
    const std::vector<double>& row = weights[r];
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * curve.values[c];
    smoothed[r] = s;
  }
  return make_curve(out_grid, std::move(smoothed));
}

FeatureObject nw_smooth(const FeatureObject& curve, const SmootherConfig& cfg) {
  if (!curve.is_curve()) throw DataError("smoother: input is not a curve");
  const std::vector<double>& out_grid =
      cfg.output_grid.empty() ? curve.grid : cfg.output_grid;
  const std::vector<std::vector<double>> weights =
      nw_weight_matrix(curve.grid, out_grid, cfg.bandwidth);
  return nw_apply(weights, out_grid, curve);
}

}  // namespace aggvote
