#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aggvote {

// Rejected configuration (bad split sizes, empty grids, invalid
// hyperparameters). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violating the format contract (malformed CSV rows, mixed
// feature kinds, curves not covering a requested interval). Exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FeatureKind { Vector, Curve };

// A feature object: a plain d-dimensional vector, or a curve discretized
// on an explicit strictly increasing grid. Values are always finite.
struct FeatureObject {
  FeatureKind kind = FeatureKind::Vector;
  std::vector<double> values;
  std::vector<double> grid;  // curves only; same length as values

  std::size_t dim() const { return values.size(); }
  bool is_curve() const { return kind == FeatureKind::Curve; }
};

// Validating constructors. Reject NaN/inf values, empty payloads and
// non-increasing curve grids.
FeatureObject make_vector(std::vector<double> values);
FeatureObject make_curve(std::vector<double> grid, std::vector<double> values);

// True when a and b share kind, dimension and (for curves) the grid.
bool compatible(const FeatureObject& a, const FeatureObject& b);

struct LabeledPoint {
  FeatureObject x;
  int y = 0;  // in {0,1}
};

// Ordered, homogeneous collection of labeled points: every point shares
// the feature kind, the dimension and (for curves) the grid. Immutable
// after construction and safe to share read-only across workers.
class Dataset {
 public:
  Dataset() = default;  // empty sentinel; every operation rejects it
  explicit Dataset(std::vector<LabeledPoint> points);

  const std::vector<LabeledPoint>& points() const { return points_; }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  std::size_t dim() const;
  FeatureKind kind() const;
  const std::vector<double>& grid() const;  // curves only
  std::int64_t positives() const;           // number of points with y == 1

 private:
  std::vector<LabeledPoint> points_;
};

// Positional split: the first fit_count points train the experts, the
// remaining ones feed the vote table. Requires 1 <= fit_count < size.
std::pair<Dataset, Dataset> split_sample(const Dataset& d, std::size_t fit_count);

enum class MetricKind { Euclidean, Linf, CurveL2 };

struct Metric {
  MetricKind kind = MetricKind::Euclidean;
};

// Euclidean for vectors, trapezoid-rule L2 for curves.
Metric default_metric(FeatureKind kind);

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// Quadrature weights of the trapezoid rule on a strictly increasing grid.
std::vector<double> trapezoid_weights(const std::vector<double>& grid);

// Trapezoid-rule integral of pointwise products, used for curve inner
// products on a common grid.
double trapezoid_inner(const std::vector<double>& grid,
                       const std::vector<double>& a,
                       const std::vector<double>& b);

// Metric distance between two compatible feature objects. CurveL2 is the
// square root of the trapezoid integral of the squared difference.
double distance(const FeatureObject& a, const FeatureObject& b, Metric m);

}  // namespace aggvote
