#include "aggvote/core.hpp"

#include <algorithm>
#include <cmath>

namespace aggvote {

namespace {

void check_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DataError(std::string(what) + " contains a non-finite value");
    }
  }
}

}  // namespace

FeatureObject make_vector(std::vector<double> values) {
  if (values.empty()) throw DataError("feature vector is empty");
  check_finite(values, "feature vector");
  FeatureObject f;
  f.kind = FeatureKind::Vector;
  f.values = std::move(values);
  return f;
}

FeatureObject make_curve(std::vector<double> grid, std::vector<double> values) {
  if (values.empty()) throw DataError("curve is empty");
  if (grid.size() != values.size()) {
    throw DataError("curve grid length differs from value length");
  }
  check_finite(grid, "curve grid");
  check_finite(values, "curve values");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DataError("curve grid is not strictly increasing at position " +
                      std::to_string(i));
    }
  }
  FeatureObject f;
  f.kind = FeatureKind::Curve;
  f.values = std::move(values);
  f.grid = std::move(grid);
  return f;
}

bool compatible(const FeatureObject& a, const FeatureObject& b) {
  if (a.kind != b.kind || a.values.size() != b.values.size()) return false;
  if (a.kind == FeatureKind::Curve && a.grid != b.grid) return false;
  return true;
}

Dataset::Dataset(std::vector<LabeledPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw DataError("dataset is empty");
  const FeatureObject& first = points_[0].x;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const LabeledPoint& p = points_[i];
    if (p.y != 0 && p.y != 1) {
      throw DataError("label outside {0,1} at row " + std::to_string(i));
    }
    if (!compatible(first, p.x)) {
      throw DataError("heterogeneous feature object at row " + std::to_string(i));
    }
  }
}

std::size_t Dataset::dim() const {
  if (empty()) throw DataError("dataset is empty");
  return points_[0].x.dim();
}

FeatureKind Dataset::kind() const {
  if (empty()) throw DataError("dataset is empty");
  return points_[0].x.kind;
}

const std::vector<double>& Dataset::grid() const {
  if (empty()) throw DataError("dataset is empty");
  if (kind() != FeatureKind::Curve) throw DataError("dataset holds no curves");
  return points_[0].x.grid;
}

std::int64_t Dataset::positives() const {
  std::int64_t n = 0;
  for (const LabeledPoint& p : points_) n += p.y;
  return n;
}

std::pair<Dataset, Dataset> split_sample(const Dataset& d, std::size_t fit_count) {
  if (d.empty()) throw DataError("dataset is empty");
  if (fit_count < 1 || fit_count >= d.size()) {
    throw ConfigError("split point " + std::to_string(fit_count) +
                      " out of range for dataset of size " + std::to_string(d.size()));
  }
  std::vector<LabeledPoint> head(d.points().begin(),
                                 d.points().begin() + static_cast<std::ptrdiff_t>(fit_count));
  std::vector<LabeledPoint> tail(d.points().begin() + static_cast<std::ptrdiff_t>(fit_count),
                                 d.points().end());
  return {Dataset(std::move(head)), Dataset(std::move(tail))};
}

Metric default_metric(FeatureKind kind) {
  return kind == FeatureKind::Curve ? Metric{MetricKind::CurveL2}
                                    : Metric{MetricKind::Euclidean};
}

std::string metric_name(Metric m) {
  switch (m.kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::Linf: return "linf";
    case MetricKind::CurveL2: return "curve_l2";
  }
  return "euclidean";
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return {MetricKind::Euclidean};
  if (name == "linf") return {MetricKind::Linf};
  if (name == "curve_l2") return {MetricKind::CurveL2};
  throw ConfigError("unknown metric '" + name + "'");
}

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, 0.0);
  if (n == 1) {
    w[0] = 1.0;  // degenerate single-point grid: plain evaluation
    return w;
  }
  w[0] = 0.5 * (grid[1] - grid[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (grid[i + 1] - grid[i - 1]);
  w[n - 1] = 0.5 * (grid[n - 1] - grid[n - 2]);
  return w;
}

double trapezoid_inner(const std::vector<double>& grid,
                       const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (grid.size() != a.size() || grid.size() != b.size()) {
    throw DataError("inner product over mismatched grids");
  }
  const std::vector<double> w = trapezoid_weights(grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

double distance(const FeatureObject& a, const FeatureObject& b, Metric m) {
  if (!compatible(a, b)) {
    throw DataError("distance between incompatible feature objects");
  }
  if (m.kind == MetricKind::CurveL2 && !a.is_curve()) {
    throw DataError("curve_l2 metric requires curves");
  }
  switch (m.kind) {
    case MetricKind::Euclidean: {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case MetricKind::Linf: {
      double best = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        best = std::max(best, std::abs(a.values[i] - b.values[i]));
      }
      return best;
    }
    case MetricKind::CurveL2: {
      const std::vector<double> w = trapezoid_weights(a.grid);
      double acc = 0.0;
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += w[i] * d * d;
      }
      return std::sqrt(acc);
    }
  }
  return 0.0;
}

}  // namespace aggvote
