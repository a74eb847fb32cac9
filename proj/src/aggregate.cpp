#include "aggvote/aggregate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace aggvote {

namespace {

void check_width(std::size_t width) {
  if (width == 0 || width > 64) {
    throw ConfigError("pattern width must be in [1, 64], got " +
                      std::to_string(width));
  }
}

void check_query(const VoteTable& table, PatternVector q) {
  if (q.width != table.width()) {
    throw ConfigError("pattern width " + std::to_string(q.width) +
                      " does not match table width " +
                      std::to_string(table.width()));
  }
}

// Per-query state of one bundled nearest-neighbor group.
struct KnnGroup {
  const Dataset* train = nullptr;
  Metric metric;
  std::vector<double> curve_weights;
  std::size_t max_k = 0;
  std::vector<std::pair<std::size_t, std::size_t>> members;  // (expert, k)
  std::vector<std::pair<double, std::size_t>> order;         // scratch
};

double group_squared_distance(const KnnGroup& g, const FeatureObject& a,
                              const FeatureObject& b) {
  switch (g.metric.kind) {
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
        s += g.curve_weights[i] * d * d;
      }
      return s;
    }
  }
  return 0.0;
}

// Computes patterns for queries [0, n) fetched through `at`, bundling
// nearest-neighbor experts that share a training sample and metric so the
// distance pass per query happens once per group instead of once per k.
template <typename QueryAt>
std::vector<PatternVector> patterns_impl(std::span<const BaseClassifier> experts,
                                         std::size_t n, QueryAt at) {
  if (experts.empty()) throw ConfigError("pattern computation: empty roster");
  check_width(experts.size());

  std::vector<KnnGroup> groups;
  std::vector<std::size_t> solo;  // experts evaluated one by one
  for (std::size_t m = 0; m < experts.size(); ++m) {
    const KnnState* knn = experts[m].knn();
    if (knn == nullptr) {
      solo.push_back(m);
      continue;
    }
    KnnGroup* group = nullptr;
    for (KnnGroup& g : groups) {
      if (g.train == knn->train.get() && g.metric.kind == knn->metric.kind) {
        group = &g;
        break;
      }
    }
    if (group == nullptr) {
      groups.emplace_back();
      group = &groups.back();
      group->train = knn->train.get();
      group->metric = knn->metric;
      if (knn->metric.kind == MetricKind::CurveL2) {
        group->curve_weights = trapezoid_weights(knn->train->grid());
      }
    }
    group->max_k = std::max(group->max_k, knn->k);
    group->members.emplace_back(m, knn->k);
  }
  for (KnnGroup& g : groups) g.order.resize(g.train->size());

  std::vector<PatternVector> out(n);
  for (std::size_t qi = 0; qi < n; ++qi) {
    const FeatureObject& x = at(qi);
    std::uint64_t bits = 0;
    for (KnnGroup& g : groups) {
      const Dataset& train = *g.train;
      if (x.dim() != train.dim() || x.kind != train.kind()) {
        throw DataError("query " + std::to_string(qi) +
                        " does not match the training data layout");
      }
      for (std::size_t i = 0; i < train.size(); ++i) {
        g.order[i] = {group_squared_distance(g, train[i].x, x), i};
      }
      // Pair comparison breaks distance ties toward the lower training index.
      std::nth_element(g.order.begin(), g.order.begin() + (g.max_k - 1),
                       g.order.end());
      std::sort(g.order.begin(), g.order.begin() + g.max_k);
      // Prefix sums of positive labels let every member read its vote off
      // the shared ranking.
      std::size_t ones = 0;
      std::vector<std::size_t> ones_at(g.max_k + 1, 0);
      for (std::size_t i = 0; i < g.max_k; ++i) {
        ones += train[g.order[i].second].y != 0;
        ones_at[i + 1] = ones;
      }
      const int nearest_label = train[g.order[0].second].y;
      for (const auto& [m, k] : g.members) {
        const std::size_t k_ones = ones_at[k];
        int label;
        if (2 * k_ones > k) {
          label = 1;
        } else if (2 * k_ones < k) {
          label = 0;
        } else {
          label = nearest_label;
        }
        bits |= static_cast<std::uint64_t>(label) << m;
      }
    }
    for (std::size_t m : solo) {
      bits |= static_cast<std::uint64_t>(experts[m].predict(x) != 0) << m;
    }
    out[qi] = {bits, static_cast<std::uint32_t>(experts.size())};
  }
  return out;
}

}  // namespace

PatternVector compute_pattern(std::span<const BaseClassifier> experts,
                              const FeatureObject& x) {
  if (experts.empty()) throw ConfigError("pattern computation: empty roster");
  check_width(experts.size());
  std::uint64_t bits = 0;
  for (std::size_t m = 0; m < experts.size(); ++m) {
    bits |= static_cast<std::uint64_t>(experts[m].predict(x) != 0) << m;
  }
  return {bits, static_cast<std::uint32_t>(experts.size())};
}

std::vector<PatternVector> compute_patterns(
    std::span<const BaseClassifier> experts,
    std::span<const FeatureObject> queries) {
  return patterns_impl(experts, queries.size(),
                       [&](std::size_t i) -> const FeatureObject& {
                         return queries[i];
                       });
}

std::vector<PatternVector> compute_patterns(
    std::span<const BaseClassifier> experts, const Dataset& queries) {
  return patterns_impl(experts, queries.size(),
                       [&](std::size_t i) -> const FeatureObject& {
                         return queries[i].x;
                       });
}

VoteTable VoteTable::build(std::span<const BaseClassifier> experts,
                           const Dataset& vote_sample) {
  if (vote_sample.empty()) {
    throw ConfigError("vote table: empty vote sample");
  }
  const std::vector<PatternVector> patterns =
      compute_patterns(experts, vote_sample);
  std::vector<int> labels(vote_sample.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = vote_sample[i].y;
  return from_patterns(experts.size(), patterns, labels);
}

VoteTable VoteTable::from_patterns(std::size_t width,
                                   std::span<const PatternVector> patterns,
                                   std::span<const int> labels) {
  check_width(width);
  if (patterns.empty()) throw ConfigError("vote table: no patterns");
  if (patterns.size() != labels.size()) {
    throw ConfigError("vote table: pattern/label count mismatch");
  }
  std::vector<std::pair<std::uint64_t, int>> rows(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (patterns[i].width != width) {
      throw ConfigError("vote table: pattern width mismatch at row " +
                        std::to_string(i));
    }
    rows[i] = {patterns[i].bits, labels[i]};
  }
  std::sort(rows.begin(), rows.end());
  std::vector<VoteCell> cells;
  for (const auto& [bits, y] : rows) {
    if (cells.empty() || cells.back().bits != bits) {
      cells.push_back({bits, 0, 0});
    }
    ++cells.back().count;
    cells.back().positives += y != 0;
  }
  return from_cells(width, std::move(cells));
}

VoteTable VoteTable::from_cells(std::size_t width, std::vector<VoteCell> cells) {
  check_width(width);
  if (cells.empty()) throw ConfigError("vote table: no cells");
  std::sort(cells.begin(), cells.end(),
            [](const VoteCell& a, const VoteCell& b) { return a.bits < b.bits; });
  const std::uint64_t max_bits =
      width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  VoteTable t;
  t.width_ = width;
  // Cell content usually arrives from stored model files, so violations are
  // data errors, unlike the width bounds above.
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const VoteCell& c = cells[i];
    if (c.bits > max_bits) {
      throw DataError("vote table: cell pattern exceeds width");
    }
    if (i > 0 && cells[i - 1].bits == c.bits) {
      throw DataError("vote table: duplicate cell pattern");
    }
    if (c.count <= 0 || c.positives < 0 || c.positives > c.count) {
      throw DataError("vote table: invalid cell counts");
    }
    t.total_ += c.count;
  }
  t.cells_ = std::move(cells);
  return t;
}

const VoteCell* VoteTable::find(std::uint64_t bits) const {
  const auto it = std::lower_bound(
      cells_.begin(), cells_.end(), bits,
      [](const VoteCell& c, std::uint64_t b) { return c.bits < b; });
  if (it == cells_.end() || it->bits != bits) return nullptr;
  return &*it;
}

std::size_t allowed_disagreements(double alpha, std::size_t width) {
  check_width(width);
  if (!(alpha >= 0.0) || alpha >= 1.0) {
    throw ConfigError("alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
  return static_cast<std::size_t>(
      std::floor(alpha * static_cast<double>(width) + 1e-9));
}

VoterCounts alpha_ball_counts(const VoteTable& table, PatternVector q,
                              double alpha) {
  check_query(table, q);
  const std::size_t allowed = allowed_disagreements(alpha, table.width());
  VoterCounts out;
  for (const VoteCell& c : table.cells()) {
    if (std::popcount(c.bits ^ q.bits) <= static_cast<int>(allowed)) {
      out.count += c.count;
      out.positives += c.positives;
    }
  }
  return out;
}

double vote_score(VoterCounts c) {
  if (c.count == 0) return 0.0;
  return static_cast<double>(c.positives) / static_cast<double>(c.count);
}

int vote_label(VoterCounts c) { return 2 * c.positives > c.count ? 1 : 0; }

AlphaNeighborhood::AlphaNeighborhood(const VoteTable& table, double alpha)
    : table_(&table),
      alpha_(alpha),
      allowed_(allowed_disagreements(alpha, table.width())) {
  if (table.width() <= 12) {
    dense_.assign(std::size_t{1} << table.width(), VoterCounts{});
    for (const VoteCell& c : table.cells()) {
      for (std::size_t q = 0; q < dense_.size(); ++q) {
        if (std::popcount(c.bits ^ q) <= static_cast<int>(allowed_)) {
          dense_[q].count += c.count;
          dense_[q].positives += c.positives;
        }
      }
    }
  }
}

VoterCounts AlphaNeighborhood::counts(PatternVector q) const {
  check_query(*table_, q);
  if (!dense_.empty()) return dense_[q.bits];
  VoterCounts out;
  for (const VoteCell& c : table_->cells()) {
    if (std::popcount(c.bits ^ q.bits) <= static_cast<int>(allowed_)) {
      out.count += c.count;
      out.positives += c.positives;
    }
  }
  return out;
}

AggregatedClassifier::AggregatedClassifier(std::vector<BaseClassifier> experts,
                                           const Dataset& vote_sample,
                                           double alpha)
    : experts_(std::move(experts)),
      table_(VoteTable::build(experts_, vote_sample)),
      neighborhood_(table_, alpha) {}

AggregatedClassifier::AggregatedClassifier(std::vector<BaseClassifier> experts,
                                           VoteTable table, double alpha)
    : experts_(std::move(experts)),
      table_(std::move(table)),
      neighborhood_(table_, alpha) {
  if (experts_.size() != table_.width()) {
    throw ConfigError("aggregated classifier: roster size " +
                      std::to_string(experts_.size()) +
                      " does not match table width " +
                      std::to_string(table_.width()));
  }
}

PatternVector AggregatedClassifier::pattern_of(const FeatureObject& x) const {
  return compute_pattern(experts_, x);
}

VoterCounts AggregatedClassifier::counts_for(PatternVector q) const {
  return neighborhood_.counts(q);
}

double AggregatedClassifier::score(const FeatureObject& x) const {
  return neighborhood_.score(pattern_of(x));
}

int AggregatedClassifier::classify(const FeatureObject& x) const {
  return neighborhood_.label(pattern_of(x));
}

std::vector<int> AggregatedClassifier::classify_batch(
    std::span<const FeatureObject> queries) const {
  const std::vector<PatternVector> patterns =
      compute_patterns(experts_, queries);
  std::vector<int> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out[i] = neighborhood_.label(patterns[i]);
  }
  return out;
}

std::vector<std::size_t> matching_voters(
    std::span<const PatternVector> vote_patterns, PatternVector q,
    double alpha) {
  const std::size_t allowed = allowed_disagreements(alpha, q.width);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < vote_patterns.size(); ++j) {
    if (vote_patterns[j].width != q.width) {
      throw ConfigError("voter match: pattern width mismatch at index " +
                        std::to_string(j));
    }
    if (std::popcount(vote_patterns[j].bits ^ q.bits) <=
        static_cast<int>(allowed)) {
      out.push_back(j);
    }
  }
  return out;
}

CellDiagnostics cell_diagnostics(const VoteTable& table) {
  CellDiagnostics out;
  out.width = table.width();
  out.total = table.total();
  const double n = static_cast<double>(table.total());
  out.cells.reserve(table.cells().size());
  for (const VoteCell& c : table.cells()) {
    CellStats s;
    s.bits = c.bits;
    s.count = c.count;
    s.positives = c.positives;
    s.p1 = static_cast<double>(c.positives) / n;
    s.p0 = static_cast<double>(c.count - c.positives) / n;
    s.gap = s.p1 - s.p0;
    s.sigma2 = s.p1 + s.p0;
    s.knife_edge = 2 * c.positives == c.count;
    out.cells.push_back(s);
  }
  return out;
}

CellDiagnostics cell_diagnostics(std::span<const BaseClassifier> experts,
                                 const Dataset& sample) {
  if (sample.empty()) throw ConfigError("cell diagnostics: empty sample");
  return cell_diagnostics(VoteTable::build(experts, sample));
}

}  // namespace aggvote
