#pragma once

#include <utility>
#include <vector>

#include "aggvote/core.hpp"
#include "aggvote/random.hpp"

namespace aggvote {

// Two uniform cubes in R^d, the class-0 cube translated by `shift` along the
// diagonal. Labels are drawn first with P(y=1) = p_class1, then the point is
// drawn uniformly from its class's cube.
struct HighDimConfig {
  std::size_t n_train = 400;
  std::size_t n_test = 200;
  std::size_t dim = 150;
  double shift = 0.25;     // translation applied to the class-0 cube
  double p_class1 = 0.75;  // class-1 probability
  double half_width = 2.0; // class-1 cube is [-half_width, half_width]^dim
};

void validate(const HighDimConfig& cfg);

std::pair<Dataset, Dataset> gen_highdim(const HighDimConfig& cfg,
                                        RandomStream& stream);

// Closed-form optimal rule for the translated-cube model. On the overlap of
// the two cubes the class densities are equal, so the posterior is flat at
// p_class1 there and the optimal rule is decided by the prior.
class HighDimOracle {
 public:
  explicit HighDimOracle(HighDimConfig cfg);

  // P(y=1 | x). Outside both cubes the density vanishes and the value is
  // immaterial; 0.5 is returned.
  double eta(const FeatureObject& x) const;
  int bayes_label(const FeatureObject& x) const { return eta(x) > 0.5; }

  // min(p1, 1-p1) * (overlap volume / cube volume).
  double bayes_risk() const;

 private:
  HighDimConfig cfg_;
};

// Gaussian process curves: population means expanded in the first few
// sine-basis functions, errors in the first 40, observed on a shared
// equispaced grid over [0,1].
enum class FunctionalModel { I, II };

struct FunctionalConfig {
  FunctionalModel model = FunctionalModel::I;
  std::size_t n_train = 90;  // total; exactly half per class
  std::size_t n_test_per_class = 100;
  std::size_t grid_size = 100;
};

void validate(const FunctionalConfig& cfg);

// sqrt(2) sin(pi j t) for j = 1..count, evaluated on grid; row j-1 is basis
// function j. On an equispaced grid containing both endpoints these are
// exactly orthonormal under the trapezoid inner product for j below the
// grid's Nyquist index, which keeps the coefficient-space oracle exact.
std::vector<std::vector<double>> sine_basis(const std::vector<double>& grid,
                                            std::size_t count);

std::vector<double> functional_grid(std::size_t size);  // equispaced, both ends

// Population mean coefficients (population is 1 or 2) padded to `count`.
std::vector<double> functional_mean_coeffs(FunctionalModel model,
                                           int population, std::size_t count);

// Error variance of basis coefficient j (1-based).
double functional_theta(FunctionalModel model, std::size_t j);

constexpr std::size_t kFunctionalErrorComponents = 40;

// Population 1 carries label 1, population 2 label 0. Training labels are
// balanced exactly and shuffled; the test set holds n_test_per_class curves
// of population 1 followed by as many of population 2.
std::pair<Dataset, Dataset> gen_functional(const FunctionalConfig& cfg,
                                           RandomStream& stream);

// Gaussian discriminant on the basis coefficients: with equal priors and
// independent N(mean_j, theta_j) coefficients, the optimal rule thresholds
// the log-likelihood ratio over the informative coefficients.
class FunctionalOracle {
 public:
  FunctionalOracle(FunctionalModel model, std::vector<double> grid);

  int bayes_label(const FeatureObject& curve) const;
  double bayes_risk() const;  // Phi(-delta/2)
  double delta2() const;      // squared separation sum((mu1-mu2)^2 / theta)

 private:
  std::vector<double> grid_;
  std::vector<std::vector<double>> basis_;  // informative components only
  std::vector<double> mu1_, mu2_, theta_;
};

// Synthetic positive spiky curves in two classes for exercising the spectrum
// pipeline: shared peaks plus one class-discriminating peak whose location
// differs by kSpectroPeakShift mass units between the classes.
constexpr double kSpectroPeakShift = 120.0;

struct SpectroLikeConfig {
  std::size_t n = 120;
  std::size_t grid_size = 350;
  double lo = 6500.0;
  double hi = 10000.0;
};

Dataset gen_spectro_like(const SpectroLikeConfig& cfg, RandomStream& stream);
Dataset gen_spectro_like(std::size_t n, RandomStream& stream);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace aggvote
