#include "aggvote/select.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "aggvote/csv.hpp"

namespace aggvote {

namespace {

std::size_t min_fit_size(std::span<const ExpertSpec> roster) {
  std::size_t need = 1;
  for (const ExpertSpec& s : roster) {
    if (s.type == ExpertType::Knn) need = std::max(need, s.k);
  }
  return need;
}

Dataset subset(const Dataset& d, std::span<const std::size_t> idx) {
  std::vector<LabeledPoint> pts;
  pts.reserve(idx.size());
  for (std::size_t i : idx) pts.push_back(d[i]);
  return Dataset(std::move(pts));
}

std::vector<std::size_t> complement(
    const std::vector<std::vector<std::size_t>>& folds, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f == skip) continue;
    out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> cv_folds(std::size_t n,
                                               std::size_t folds,
                                               RandomStream& stream) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (folds > n) {
    throw ConfigError("cross-validation with " + std::to_string(folds) +
                      " folds needs at least that many points, got " +
                      std::to_string(n));
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  stream.shuffle(idx);
  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t lo = f * n / folds;
    const std::size_t hi = (f + 1) * n / folds;
    out[f].assign(idx.begin() + lo, idx.begin() + hi);
  }
  return out;
}

CvResult cv_alpha_vote_size(const Dataset& d, std::span<const ExpertSpec> roster,
                            const CvGrid& grid, RandomStream& stream) {
  if (grid.alphas.empty() || grid.vote_sizes.empty()) {
    throw ConfigError("cross-validation grid is empty");
  }
  for (double a : grid.alphas) allowed_disagreements(a, roster.size());
  if (roster.empty()) throw ConfigError("cross-validation: empty roster");

  const std::vector<std::vector<std::size_t>> folds =
      cv_folds(d.size(), grid.folds, stream);
  std::size_t min_train = d.size();
  for (std::size_t f = 0; f < folds.size(); ++f) {
    min_train = std::min(min_train, d.size() - folds[f].size());
  }
  const std::size_t fit_need = min_fit_size(roster);

  CvResult result;
  const std::size_t n_alpha = grid.alphas.size();
  result.points.resize(grid.vote_sizes.size() * n_alpha);
  for (std::size_t li = 0; li < grid.vote_sizes.size(); ++li) {
    for (std::size_t ai = 0; ai < n_alpha; ++ai) {
      CvPoint& p = result.points[li * n_alpha + ai];
      p.alpha = grid.alphas[ai];
      p.vote_size = grid.vote_sizes[li];
      if (p.vote_size == 0) {
        p.skipped = true;
        p.note = "vote size 0";
      } else if (p.vote_size >= min_train ||
                 min_train - p.vote_size < fit_need) {
        p.skipped = true;
        p.note = "vote size " + std::to_string(p.vote_size) +
                 " leaves fewer than " + std::to_string(fit_need) +
                 " of " + std::to_string(min_train) +
                 " training points for the experts";
      }
    }
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::vector<std::size_t> train_idx = complement(folds, f);
    const Dataset eval = subset(d, folds[f]);
    for (std::size_t li = 0; li < grid.vote_sizes.size(); ++li) {
      const std::size_t l = grid.vote_sizes[li];
      if (result.points[li * n_alpha].skipped) continue;
      const std::size_t k = train_idx.size() - l;

      auto fit = std::make_shared<const Dataset>(
          subset(d, std::span(train_idx.data(), k)));
      const Dataset vote = subset(d, std::span(train_idx.data() + k, l));
      const std::vector<BaseClassifier> experts =
          fit_roster(roster, fit, stream);

      const std::vector<PatternVector> vote_patterns =
          compute_patterns(experts, vote);
      const std::vector<PatternVector> eval_patterns =
          compute_patterns(experts, eval);
      std::vector<int> vote_labels(vote.size());
      for (std::size_t i = 0; i < vote.size(); ++i) vote_labels[i] = vote[i].y;
      const VoteTable table =
          VoteTable::from_patterns(roster.size(), vote_patterns, vote_labels);

      for (std::size_t ai = 0; ai < n_alpha; ++ai) {
        const AlphaNeighborhood hood(table, grid.alphas[ai]);
        std::int64_t wrong = 0;
        for (std::size_t i = 0; i < eval.size(); ++i) {
          wrong += hood.label(eval_patterns[i]) != eval[i].y;
        }
        result.points[li * n_alpha + ai].fold_errors.push_back(
            static_cast<double>(wrong) / static_cast<double>(eval.size()));
      }
    }
  }

  bool any = false;
  for (std::size_t p = 0; p < result.points.size(); ++p) {
    CvPoint& point = result.points[p];
    if (point.skipped) continue;
    point.mean_error =
        std::accumulate(point.fold_errors.begin(), point.fold_errors.end(),
                        0.0) /
        static_cast<double>(point.fold_errors.size());
    if (!any || point.mean_error < result.best_error) {
      any = true;
      result.best_error = point.mean_error;
    }
  }
  if (!any) {
    throw ConfigError("cross-validation: every grid point was skipped");
  }
  for (std::size_t p = 0; p < result.points.size(); ++p) {
    if (!result.points[p].skipped &&
        result.points[p].mean_error == result.best_error) {
      result.argmin.push_back(p);
    }
  }
  // Points are laid out vote-size-major with alphas ascending within, so the
  // first argmin entry realizes the smallest vote size, then smallest alpha,
  // as long as the caller passes sorted grids.
  const CvPoint& chosen = result.points[result.argmin.front()];
  result.chosen_alpha = chosen.alpha;
  result.chosen_vote_size = chosen.vote_size;
  return result;
}

std::string cv_result_csv(const CvResult& r) {
  std::size_t max_folds = 0;
  for (const CvPoint& p : r.points) {
    max_folds = std::max(max_folds, p.fold_errors.size());
  }
  std::string out = "alpha,vote_size";
  for (std::size_t f = 0; f < max_folds; ++f) {
    out += ",fold" + std::to_string(f + 1);
  }
  out += ",mean,chosen,note\n";
  for (std::size_t p = 0; p < r.points.size(); ++p) {
    const CvPoint& point = r.points[p];
    out += format_double(point.alpha) + "," + std::to_string(point.vote_size);
    for (std::size_t f = 0; f < max_folds; ++f) {
      out += ",";
      if (f < point.fold_errors.size()) {
        out += format_double(point.fold_errors[f]);
      }
    }
    out += ",";
    if (!point.skipped) out += format_double(point.mean_error);
    const bool chosen = !point.skipped &&
                        point.alpha == r.chosen_alpha &&
                        point.vote_size == r.chosen_vote_size;
    out += chosen ? ",1," : ",0,";
    out += point.note;
    out += "\n";
  }
  return out;
}

CvKnnResult cv_knn(const Dataset& d, std::span<const std::size_t> candidates,
                   Metric metric, std::size_t folds, RandomStream& stream) {
  if (candidates.empty()) throw ConfigError("cv_knn: no candidates");
  const std::vector<std::vector<std::size_t>> fold_idx =
      cv_folds(d.size(), folds, stream);
  std::size_t max_k = 0;
  for (std::size_t k : candidates) {
    if (k == 0) throw ConfigError("cv_knn: k must be positive");
    max_k = std::max(max_k, k);
  }
  for (std::size_t f = 0; f < folds; ++f) {
    if (max_k > d.size() - fold_idx[f].size()) {
      throw ConfigError("cv_knn: k=" + std::to_string(max_k) +
                        " exceeds a fold's training size");
    }
  }
  const std::vector<double> weights = metric.kind == MetricKind::CurveL2
                                          ? trapezoid_weights(d.grid())
                                          : std::vector<double>{};

  CvKnnResult result;
  result.candidates.assign(candidates.begin(), candidates.end());
  std::vector<std::int64_t> wrong_total(candidates.size(), 0);
  std::vector<double> error_sum(candidates.size(), 0.0);

  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::vector<std::size_t> train_idx = complement(fold_idx, f);
    const Dataset train = subset(d, train_idx);
    std::vector<std::int64_t> wrong(candidates.size(), 0);
    order.resize(train.size());
    for (std::size_t e : fold_idx[f]) {
      for (std::size_t i = 0; i < train.size(); ++i) {
        double s = 0.0;
        const FeatureObject& a = train[i].x;
        const FeatureObject& b = d[e].x;
        if (metric.kind == MetricKind::Linf) {
          for (std::size_t j = 0; j < a.values.size(); ++j) {
            s = std::max(s, std::abs(a.values[j] - b.values[j]));
          }
        } else if (metric.kind == MetricKind::CurveL2) {
          for (std::size_t j = 0; j < a.values.size(); ++j) {
            const double diff = a.values[j] - b.values[j];
            s += weights[j] * diff * diff;
          }
        } else {
          for (std::size_t j = 0; j < a.values.size(); ++j) {
            const double diff = a.values[j] - b.values[j];
            s += diff * diff;
          }
        }
        order[i] = {s, i};
      }
      std::nth_element(order.begin(), order.begin() + (max_k - 1), order.end());
      std::sort(order.begin(), order.begin() + max_k);
      std::vector<std::size_t> ones_at(max_k + 1, 0);
      for (std::size_t i = 0; i < max_k; ++i) {
        ones_at[i + 1] = ones_at[i] + (train[order[i].second].y != 0);
      }
      const int nearest = train[order[0].second].y;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const std::size_t k = candidates[c];
        const std::size_t ones = ones_at[k];
        int label;
        if (2 * ones > k) {
          label = 1;
        } else if (2 * ones < k) {
          label = 0;
        } else {
          label = nearest;
        }
        wrong[c] += label != d[e].y;
      }
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      wrong_total[c] += wrong[c];
      error_sum[c] += static_cast<double>(wrong[c]) /
                      static_cast<double>(fold_idx[f].size());
    }
  }

  result.mean_errors.resize(candidates.size());
  bool any = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    result.mean_errors[c] = error_sum[c] / static_cast<double>(folds);
    const bool better =
        !any || result.mean_errors[c] < result.best_error ||
        (result.mean_errors[c] == result.best_error &&
         candidates[c] < result.chosen_k);
    if (better) {
      any = true;
      result.best_error = result.mean_errors[c];
      result.chosen_k = candidates[c];
    }
  }
  return result;
}

BandwidthChoice cv_bandwidths(const Dataset& train,
                              const BandwidthCvOptions& options,
                              RandomStream& stream) {
  if (train.kind() != FeatureKind::Curve) {
    throw DataError("bandwidth selection requires curve data");
  }
  if (options.grid_label1.empty() || options.grid_label0.empty()) {
    throw ConfigError("bandwidth selection: empty bandwidth grid");
  }
  if (options.roster.empty()) {
    throw ConfigError("bandwidth selection: empty roster");
  }
  if (options.vote_size == 0) {
    throw ConfigError("bandwidth selection: vote size must be positive");
  }
  const std::int64_t pos = train.positives();
  if (pos == 0 || pos == static_cast<std::int64_t>(train.size())) {
    throw DataError("bandwidth selection: training sample has a single class");
  }

  // Row-normalized smoothing matrices depend only on the shared grid and h.
  std::map<double, std::vector<std::vector<double>>> smoothers;
  std::map<double, std::string> failed;
  auto smoother_for = [&](double h) -> const std::vector<std::vector<double>>* {
    if (failed.count(h)) return nullptr;
    auto it = smoothers.find(h);
    if (it != smoothers.end()) return &it->second;
    try {
      it = smoothers.emplace(h, nw_weight_matrix(train.grid(), train.grid(), h))
               .first;
      return &it->second;
    } catch (const ConfigError& e) {
      failed[h] = e.what();
      return nullptr;
    }
  };

  const std::vector<std::vector<std::size_t>> folds =
      cv_folds(train.size(), options.folds, stream);

  const std::size_t n_pairs =
      options.grid_label1.size() * options.grid_label0.size();
  std::vector<double> error_sum(n_pairs, 0.0);

  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::vector<std::size_t> train_idx = complement(folds, f);
    if (options.vote_size >= train_idx.size()) {
      throw ConfigError("bandwidth selection: vote size " +
                        std::to_string(options.vote_size) +
                        " does not fit in a fold training part of " +
                        std::to_string(train_idx.size()));
    }
    const std::size_t k = train_idx.size() - options.vote_size;
    const Dataset eval = subset(train, folds[f]);

    // Smoothed copies per bandwidth, indexed by fold-train position; only the
    // positions of the matching class are filled.
    std::map<double, std::vector<FeatureObject>> smooth1, smooth0;
    auto smoothed = [&](double h, bool label1)
        -> const std::vector<FeatureObject>* {
      auto& cache = label1 ? smooth1 : smooth0;
      auto it = cache.find(h);
      if (it != cache.end()) return &it->second;
      const std::vector<std::vector<double>>* w = smoother_for(h);
      if (w == nullptr) return nullptr;
      std::vector<FeatureObject> curves(train_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        const LabeledPoint& p = train[train_idx[i]];
        if ((p.y != 0) == label1) {
          curves[i] = nw_apply(*w, train.grid(), p.x);
        }
      }
      return &cache.emplace(h, std::move(curves)).first->second;
    };

    for (std::size_t i1 = 0; i1 < options.grid_label1.size(); ++i1) {
      for (std::size_t i0 = 0; i0 < options.grid_label0.size(); ++i0) {
        const double h1 = options.grid_label1[i1];
        const double h0 = options.grid_label0[i0];
        const std::vector<FeatureObject>* c1 = smoothed(h1, true);
        const std::vector<FeatureObject>* c0 = smoothed(h0, false);
        const std::size_t pair = i1 * options.grid_label0.size() + i0;
        if (c1 == nullptr || c0 == nullptr) {
          error_sum[pair] = std::numeric_limits<double>::infinity();
          continue;
        }
        std::vector<LabeledPoint> pts;
        pts.reserve(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
          const LabeledPoint& p = train[train_idx[i]];
          pts.push_back({p.y != 0 ? (*c1)[i] : (*c0)[i], p.y});
        }
        Dataset smoothed_train(std::move(pts));
        auto [fit, vote] = split_sample(smoothed_train, k);
        auto fit_ptr = std::make_shared<const Dataset>(std::move(fit));
        const std::vector<BaseClassifier> experts =
            fit_roster(options.roster, fit_ptr, stream);
        const VoteTable table = VoteTable::build(experts, vote);
        const AlphaNeighborhood hood(table, options.alpha);
        const std::vector<PatternVector> eval_patterns =
            compute_patterns(experts, eval);
        std::int64_t wrong = 0;
        for (std::size_t i = 0; i < eval.size(); ++i) {
          wrong += hood.label(eval_patterns[i]) != eval[i].y;
        }
        error_sum[pair] += static_cast<double>(wrong) /
                           static_cast<double>(eval.size());
      }
    }
  }

  BandwidthChoice out;
  bool any = false;
  for (std::size_t i1 = 0; i1 < options.grid_label1.size(); ++i1) {
    for (std::size_t i0 = 0; i0 < options.grid_label0.size(); ++i0) {
      const std::size_t pair = i1 * options.grid_label0.size() + i0;
      if (error_sum[pair] == std::numeric_limits<double>::infinity()) continue;
      const double mean = error_sum[pair] / static_cast<double>(folds.size());
      if (!any || mean < out.cv_error) {
        any = true;
        out.cv_error = mean;
        out.h_label1 = options.grid_label1[i1];
        out.h_label0 = options.grid_label0[i0];
      }
    }
  }
  if (!any) {
    throw ConfigError("bandwidth selection: every candidate pair failed");
  }
  for (const auto& [h, why] : failed) {
    out.warnings.push_back("bandwidth " + std::to_string(h) + " skipped: " +
                           why);
  }
  return out;
}

}  // namespace aggvote
