#include "aggvote/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aggvote {

void validate(const HighDimConfig& cfg) {
  if (cfg.dim == 0) throw ConfigError("highdim: dim must be positive");
  if (!(cfg.shift > 0.0)) throw ConfigError("highdim: shift must be positive");
  if (!(cfg.p_class1 > 0.0) || !(cfg.p_class1 < 1.0)) {
    throw ConfigError("highdim: p_class1 must lie in (0, 1)");
  }
  if (!(cfg.half_width > 0.0)) {
    throw ConfigError("highdim: half_width must be positive");
  }
  if (cfg.n_train == 0) throw ConfigError("highdim: n_train must be positive");
}

std::pair<Dataset, Dataset> gen_highdim(const HighDimConfig& cfg,
                                        RandomStream& stream) {
  validate(cfg);
  const double w = cfg.half_width;
  std::vector<LabeledPoint> train, test;
  train.reserve(cfg.n_train);
  test.reserve(cfg.n_test);
  for (std::size_t i = 0; i < cfg.n_train + cfg.n_test; ++i) {
    const int y = stream.uniform() > 1.0 - cfg.p_class1 ? 1 : 0;
    std::vector<double> x(cfg.dim);
    const double lo = y != 0 ? -w : -w + cfg.shift;
    const double hi = y != 0 ? w : w + cfg.shift;
    for (double& v : x) v = stream.uniform_in(lo, hi);
    (i < cfg.n_train ? train : test).push_back({make_vector(std::move(x)), y});
  }
  return {Dataset(std::move(train)),
          cfg.n_test > 0 ? Dataset(std::move(test)) : Dataset()};
}

HighDimOracle::HighDimOracle(HighDimConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
}

double HighDimOracle::eta(const FeatureObject& x) const {
  const double w = cfg_.half_width;
  bool in1 = true;  // class-1 cube [-w, w]^d
  bool in0 = true;  // class-0 cube [-w + shift, w + shift]^d
  for (double v : x.values) {
    in1 = in1 && v >= -w && v <= w;
    in0 = in0 && v >= -w + cfg_.shift && v <= w + cfg_.shift;
  }
  if (in1 && in0) return cfg_.p_class1;
  if (in1) return 1.0;
  if (in0) return 0.0;
  return 0.5;
}

double HighDimOracle::bayes_risk() const {
  const double side = 2.0 * cfg_.half_width;
  const double overlap = std::max(0.0, side - cfg_.shift) / side;
  return std::min(cfg_.p_class1, 1.0 - cfg_.p_class1) *
         std::pow(overlap, static_cast<double>(cfg_.dim));
}

void validate(const FunctionalConfig& cfg) {
  if (cfg.n_train == 0 || cfg.n_train % 2 != 0) {
    throw ConfigError("functional: n_train must be positive and even, got " +
                      std::to_string(cfg.n_train));
  }
  if (cfg.grid_size < 2) {
    throw ConfigError("functional: grid_size must be at least 2");
  }
}

std::vector<double> functional_grid(std::size_t size) {
  if (size < 2) throw ConfigError("functional grid needs at least 2 points");
  std::vector<double> grid(size);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(size - 1);
  }
  return grid;
}

std::vector<std::vector<double>> sine_basis(const std::vector<double>& grid,
                                            std::size_t count) {
  std::vector<std::vector<double>> basis(count);
  const double root2 = std::numbers::sqrt2;
  for (std::size_t j = 1; j <= count; ++j) {
    std::vector<double>& row = basis[j - 1];
    row.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      row[i] = root2 * std::sin(std::numbers::pi * static_cast<double>(j) *
                                grid[i]);
    }
  }
  return basis;
}

std::vector<double> functional_mean_coeffs(FunctionalModel model,
                                           int population, std::size_t count) {
  if (population != 1 && population != 2) {
    throw ConfigError("functional population must be 1 or 2");
  }
  std::vector<double> mu;
  if (model == FunctionalModel::I) {
    mu = population == 1 ? std::vector<double>{0.0, -0.5, 1.0, -0.5, 1.0, -0.5}
                         : std::vector<double>{0.0, -0.75, 0.75,
                                               -0.15, 1.4, 0.1};
  } else {
    mu = population == 1 ? std::vector<double>{0.75, -0.75, 0.75}
                         : std::vector<double>{0.0, 0.0, 0.0};
  }
  mu.resize(std::max(count, mu.size()), 0.0);
  mu.resize(count);
  return mu;
}

double functional_theta(FunctionalModel model, std::size_t j) {
  if (j == 0) throw ConfigError("functional theta index is 1-based");
  const double jd = static_cast<double>(j);
  if (model == FunctionalModel::I) return 1.0 / (jd * jd);
  const double u = 2.1 - (jd - 1.0) / 20.0;
  return std::exp(-u * u);
}

namespace {

std::vector<double> thetas(FunctionalModel model, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t j = 1; j <= count; ++j) {
    out[j - 1] = functional_theta(model, j);
  }
  return out;
}

// mean + sum_j sqrt(theta_j) z_j basis_j on the grid.
std::vector<double> draw_curve(const std::vector<double>& mean,
                               const std::vector<std::vector<double>>& basis,
                               const std::vector<double>& sqrt_theta,
                               RandomStream& stream) {
  std::vector<double> values = mean;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double c = sqrt_theta[j] * stream.normal();
    const std::vector<double>& row = basis[j];
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += c * row[i];
  }
  return values;
}

}  // namespace

std::pair<Dataset, Dataset> gen_functional(const FunctionalConfig& cfg,
                                           RandomStream& stream) {
  validate(cfg);
  const std::vector<double> grid = functional_grid(cfg.grid_size);
  const std::vector<std::vector<double>> basis =
      sine_basis(grid, kFunctionalErrorComponents);
  std::vector<double> sqrt_theta =
      thetas(cfg.model, kFunctionalErrorComponents);
  for (double& t : sqrt_theta) t = std::sqrt(t);

  // Population mean curves; population 1 carries label 1.
  std::vector<std::vector<double>> mean(2, std::vector<double>(grid.size(), 0.0));
  for (int pop = 1; pop <= 2; ++pop) {
    const std::vector<double> mu = functional_mean_coeffs(
        cfg.model, pop, kFunctionalErrorComponents);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (mu[j] == 0.0) continue;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        mean[pop - 1][i] += mu[j] * basis[j][i];
      }
    }
  }

  std::vector<int> labels(cfg.n_train);
  for (std::size_t i = 0; i < cfg.n_train / 2; ++i) labels[i] = 1;
  stream.shuffle(labels);

  std::vector<LabeledPoint> train;
  train.reserve(cfg.n_train);
  for (int y : labels) {
    train.push_back(
        {make_curve(grid, draw_curve(mean[y != 0 ? 0 : 1], basis, sqrt_theta,
                                     stream)),
         y});
  }

  std::vector<LabeledPoint> test;
  test.reserve(2 * cfg.n_test_per_class);
  for (int pop = 1; pop <= 2; ++pop) {
    for (std::size_t i = 0; i < cfg.n_test_per_class; ++i) {
      test.push_back(
          {make_curve(grid, draw_curve(mean[pop - 1], basis, sqrt_theta,
                                       stream)),
           pop == 1 ? 1 : 0});
    }
  }
  return {Dataset(std::move(train)),
          test.empty() ? Dataset() : Dataset(std::move(test))};
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

FunctionalOracle::FunctionalOracle(FunctionalModel model,
                                   std::vector<double> grid)
    : grid_(std::move(grid)) {
  const std::size_t informative = model == FunctionalModel::I ? 6 : 3;
  basis_ = sine_basis(grid_, informative);
  mu1_ = functional_mean_coeffs(model, 1, informative);
  mu2_ = functional_mean_coeffs(model, 2, informative);
  theta_ = thetas(model, informative);
  for (std::size_t j = 0; j < informative; ++j) {
    if (!(theta_[j] > 0.0) && mu1_[j] != mu2_[j]) {
      throw ConfigError("functional oracle: zero variance on an informative "
                        "coefficient");
    }
  }
}

int FunctionalOracle::bayes_label(const FeatureObject& curve) const {
  // Log-likelihood ratio of population 1 over population 2 in coefficient
  // space, equal priors.
  double llr = 0.0;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const double c = trapezoid_inner(grid_, curve.values, basis_[j]);
    const double d2 = c - mu2_[j];
    const double d1 = c - mu1_[j];
    llr += (d2 * d2 - d1 * d1) / (2.0 * theta_[j]);
  }
  return llr > 0.0 ? 1 : 0;
}

double FunctionalOracle::delta2() const {
  double s = 0.0;
  for (std::size_t j = 0; j < mu1_.size(); ++j) {
    const double d = mu1_[j] - mu2_[j];
    s += d * d / theta_[j];
  }
  return s;
}

double FunctionalOracle::bayes_risk() const {
  return normal_cdf(-0.5 * std::sqrt(delta2()));
}

namespace {

void add_peak(std::vector<double>& values, const std::vector<double>& grid,
              double center, double width, double height) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = (grid[i] - center) / width;
    values[i] += height * std::exp(-0.5 * u * u);
  }
}

}  // namespace

Dataset gen_spectro_like(const SpectroLikeConfig& cfg, RandomStream& stream) {
  if (cfg.n < 2) throw ConfigError("spectro-like: need at least 2 curves");
  if (cfg.grid_size < 2 || !(cfg.lo < cfg.hi)) {
    throw ConfigError("spectro-like: invalid grid");
  }
  std::vector<double> grid(cfg.grid_size);
  for (std::size_t i = 0; i < cfg.grid_size; ++i) {
    grid[i] = cfg.lo + (cfg.hi - cfg.lo) * static_cast<double>(i) /
                           static_cast<double>(cfg.grid_size - 1);
  }

  std::vector<int> labels(cfg.n);
  for (std::size_t i = 0; i < cfg.n / 2; ++i) labels[i] = 1;
  stream.shuffle(labels);

  std::vector<LabeledPoint> points;
  points.reserve(cfg.n);
  for (int y : labels) {
    std::vector<double> values(grid.size());
    // Slowly decaying baseline keeps everything strictly positive.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = 0.15 + 0.1 * std::exp(-(grid[i] - cfg.lo) / 1500.0);
    }
    // Shared peaks with per-curve jitter in height and position.
    const double scale = std::exp(0.25 * stream.normal());
    for (double center : {7300.0, 8100.0, 8900.0}) {
      add_peak(values, grid, center + 15.0 * stream.normal(), 60.0,
               scale * (0.8 + 0.3 * stream.uniform()));
    }
    // The class-bearing peak sits at 7700 for class 0 and is shifted for
    // class 1; the shift is large against the peak width and the jitter, so
    // a plain nearest-neighbor rule separates the classes reliably.
    const double center = 7700.0 + (y != 0 ? kSpectroPeakShift : 0.0);
    add_peak(values, grid, center + 10.0 * stream.normal(), 60.0,
             scale * (1.0 + 0.3 * stream.uniform()));
    // Mild positive measurement noise.
    for (double& v : values) {
      v *= 1.0 + 0.02 * stream.normal();
      v = std::max(v, 1e-6);
    }
    points.push_back({make_curve(grid, std::move(values)), y});
  }
  return Dataset(std::move(points));
}

Dataset gen_spectro_like(std::size_t n, RandomStream& stream) {
  SpectroLikeConfig cfg;
  cfg.n = n;
  return gen_spectro_like(cfg, stream);
}

}  // namespace aggvote
