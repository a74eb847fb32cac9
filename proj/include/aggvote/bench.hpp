#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggvote/learners.hpp"
#include "aggvote/simgen.hpp"

namespace aggvote {

// Class-wise smoothing of the training curves before the split; evaluation
// data stays raw.
struct PreSmooth {
  double h_label1 = 0.0;
  double h_label0 = 0.0;
};

struct GeneratorSpec {
  enum class Kind { HighDim, Functional, SpectroLike } kind = Kind::HighDim;
  HighDimConfig highdim;
  FunctionalConfig functional;
  SpectroLikeConfig spectro;
  std::size_t spectro_n_test = 0;  // spectro-like draws train and test jointly
  std::optional<PreSmooth> presmooth;  // curve generators only
};

// Fresh roster per replicate: `count` distinct odd neighbor counts drawn
// uniformly between 1 and min(#positives, #negatives) of the expert split.
struct RandomOddKnnRoster {
  std::size_t count = 10;
};

// Optional columns: a k-NN classifier whose k is cross-validated per
// replicate, trained on the full training sample and/or on the expert split.
struct CvKnnColumns {
  bool on_full = false;
  bool on_split = false;
  std::size_t folds = 5;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t replicates = 100;
  std::size_t threads = 1;
  GeneratorSpec generator;
  std::size_t fit_count = 0;  // training points given to the experts
  std::vector<ExpertSpec> roster;
  std::optional<RandomOddKnnRoster> random_roster;
  std::vector<double> alphas = {0.0};
  bool base_columns = true;  // per-expert error columns (fixed rosters only)
  CvKnnColumns cv_knn;
};

void validate(const ExperimentConfig& cfg);

// Raw train and test draw for a generator spec; presmoothing is applied
// separately so callers can keep the raw curves.
std::pair<Dataset, Dataset> generate(const GeneratorSpec& g,
                                     RandomStream& stream);

// Class-wise smoothing of a curve dataset per the generator's presmooth block;
// identity when none is configured.
Dataset apply_presmooth(const GeneratorSpec& g, const Dataset& train);

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_json(const ExperimentConfig& cfg);

// Standalone parsers for CLI configs that embed the same JSON blocks: a
// generator object and an expert array.
GeneratorSpec parse_generator_spec(const std::string& json_text);
std::vector<ExpertSpec> parse_roster_spec(const std::string& json_text);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  double mad = 0.0;
  bool sd_degenerate = false;  // single observation: sd reported as 0
};

// Mean, sample standard deviation (n-1 divisor), midpoint median, and the
// unscaled median absolute deviation.
Summary summarize(const std::vector<double>& values);

struct MethodResult {
  std::string name;
  std::vector<std::int64_t> miscounts;  // per replicate
  std::vector<double> errors;           // miscounts / test size
  Summary summary;
};

struct ExperimentReport {
  std::string design;  // "fit/vote" sizes, e.g. "400/300"
  std::size_t test_size = 0;
  std::size_t replicates = 0;
  std::vector<MethodResult> methods;
};

// Runs the full replicate loop: per replicate, generate data with a stream
// derived from (seed, replicate), fit the roster on the first fit_count
// training points, build the vote table on the rest, and score every method
// on the test set. Any replicate failure aborts with its index and cause.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// One row per method: summary statistics at full precision plus the
// Monte-Carlo standard error of the mean.
std::string report_csv(const ExperimentReport& r);

// Publication-table layout, 3 decimals: a "mean (sd)" block and a "median (MAD)"
// block.
std::string report_markdown(const ExperimentReport& r);

// One row per (replicate, method) with the integer miscount.
std::string raw_errors_csv(const ExperimentReport& r);

}  // namespace aggvote
