// Command-line front end: data simulation, model fit/predict, parameter
// cross-validation, Monte-Carlo benchmarks, spectrum preprocessing, and
// voter-set export. Every run is fully determined by its config and seed.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "aggvote/bench.hpp"
#include "aggvote/csv.hpp"
#include "aggvote/model_io.hpp"
#include "aggvote/select.hpp"
#include "aggvote/spectro.hpp"

namespace {

using namespace aggvote;
using nlohmann::json;

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct SimulateArgs {
  std::string generator_path;
  std::string train_path;
  std::string test_path;
  std::uint64_t seed = 1;
};

void cmd_simulate(const SimulateArgs& args) {
  const GeneratorSpec spec =
      parse_generator_spec(read_text_file(args.generator_path));
  RandomStream stream(SeedSpec{args.seed, 0});
  auto [train, test] = generate(spec, stream);
  write_dataset_csv(args.train_path, apply_presmooth(spec, train));
  if (!args.test_path.empty()) {
    if (test.empty()) {
      throw ConfigError("generator produced no test set; drop --test or set "
                        "a test size in the generator spec");
    }
    write_dataset_csv(args.test_path, test);
  }
}

struct FitArgs {
  std::string train_path;
  std::string config_path;
  std::string model_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
};

void cmd_fit(const FitArgs& args) {
  const json cfg = parse_json_file(args.config_path);
  if (!cfg.is_object()) throw ConfigError("fit config must be a JSON object");
  if (!cfg.contains("fit_count") || !cfg.contains("roster")) {
    throw ConfigError("fit config needs fit_count and roster");
  }
  const std::size_t fit_count = cfg.at("fit_count").get<std::size_t>();
  const double alpha = cfg.value("alpha", 0.0);
  const std::vector<ExpertSpec> roster =
      parse_roster_spec(cfg.at("roster").dump());
  std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  if (args.seed_given) seed = args.seed;

  const Dataset train = read_dataset_csv(args.train_path);
  if (fit_count >= train.size()) {
    throw ConfigError("fit_count " + std::to_string(fit_count) +
                      " must be smaller than the training size " +
                      std::to_string(train.size()));
  }
  auto [fit, vote] = split_sample(train, fit_count);
  RandomStream stream(SeedSpec{seed, 0});
  auto fit_ptr = std::make_shared<const Dataset>(fit);
  std::vector<BaseClassifier> experts = fit_roster(roster, fit_ptr, stream);
  for (const BaseClassifier& e : experts) {
    if (e.type() == ExpertType::Fisher && e.fisher()->ridge_fallback) {
      std::cerr << "warning: singular pooled covariance; fisher expert fell "
                   "back to an automatic ridge\n";
    }
  }
  const AggregatedClassifier rule(std::move(experts), vote, alpha);
  save_model(args.model_path, rule, fit, vote);
}

struct PredictArgs {
  std::string model_path;
  std::string query_path;
  std::string out_path;
};

void cmd_predict(const PredictArgs& args) {
  const LoadedModel model = load_model(args.model_path);
  const QuerySet queries = read_query_csv(args.query_path);
  std::string out = queries.has_labels ? "query_id,score,label,truth\n"
                                       : "query_id,score,label\n";
  for (std::size_t i = 0; i < queries.queries.size(); ++i) {
    const PatternVector pattern = model.rule.pattern_of(queries.queries[i]);
    const VoterCounts counts = model.rule.counts_for(pattern);
    out += std::to_string(i) + "," + format_double(vote_score(counts)) + "," +
           std::to_string(vote_label(counts));
    if (queries.has_labels) out += "," + std::to_string(queries.labels[i]);
    out += "\n";
  }
  write_text_file(args.out_path, out);
}

struct CvArgs {
  std::string train_path;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
};

void cmd_cv(const CvArgs& args) {
  const json cfg = parse_json_file(args.config_path);
  if (!cfg.is_object()) throw ConfigError("cv config must be a JSON object");
  if (!cfg.contains("roster")) throw ConfigError("cv config needs a roster");
  const std::vector<ExpertSpec> roster =
      parse_roster_spec(cfg.at("roster").dump());

  CvGrid grid;
  grid.alphas = cfg.value("alphas", std::vector<double>{0.0});
  if (cfg.contains("vote_sizes")) {
    const json& vs = cfg.at("vote_sizes");
    if (vs.is_array()) {
      grid.vote_sizes = vs.get<std::vector<std::size_t>>();
    } else if (vs.is_object()) {
      const std::size_t from = vs.at("from").get<std::size_t>();
      const std::size_t to = vs.at("to").get<std::size_t>();
      if (from > to) throw ConfigError("vote_sizes: from exceeds to");
      for (std::size_t l = from; l <= to; ++l) grid.vote_sizes.push_back(l);
    } else {
      throw ConfigError("vote_sizes must be an array or a from/to object");
    }
  } else {
    throw ConfigError("cv config needs vote_sizes");
  }
  grid.folds = cfg.value("folds", std::size_t{5});
  std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
  if (args.seed_given) seed = args.seed;

  const Dataset train = read_dataset_csv(args.train_path);
  RandomStream stream(SeedSpec{seed, 0});
  const CvResult result = cv_alpha_vote_size(train, roster, grid, stream);
  write_text_file(args.out_path, cv_result_csv(result));

  for (const CvPoint& p : result.points) {
    if (p.skipped) std::cerr << "warning: " << p.note << "\n";
  }
  std::cout << "chosen alpha=" << format_double(result.chosen_alpha)
            << " vote_size=" << result.chosen_vote_size
            << " cv_error=" << format_double(result.best_error) << "\n";
  std::cout << "argmin set (" << result.argmin.size() << " grid points):";
  for (std::size_t idx : result.argmin) {
    const CvPoint& p = result.points[idx];
    std::cout << " (alpha=" << format_double(p.alpha) << ",l=" << p.vote_size
              << ")";
  }
  std::cout << "\n";
}

struct BenchArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void cmd_bench(const BenchArgs& args) {
  ExperimentConfig cfg =
      parse_experiment_config(read_text_file(args.config_path));
  if (args.seed_given) cfg.seed = args.seed;
  const ExperimentReport report = run_experiment(cfg);
  std::filesystem::create_directories(args.out_dir);
  const std::string base = args.out_dir + "/";
  write_text_file(base + "report.csv", report_csv(report));
  write_text_file(base + "report.md", report_markdown(report));
  write_text_file(base + "raw_errors.csv", raw_errors_csv(report));
  std::cout << report_markdown(report);
}

struct SpectroArgs {
  std::string in_path;
  std::string out_path;
  SpectrumPrepOptions options;
};

void cmd_spectro_prep(const SpectroArgs& args) {
  const Dataset raw = read_dataset_csv(args.in_path);
  const SpectrumPrepResult result = spectro_prep(raw, args.options);
  for (const std::string& w : result.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  write_dataset_csv(args.out_path, result.data);
  std::cout << "kept " << result.data.size() << " of " << raw.size()
            << " rows\n";
}

struct VotersArgs {
  std::string model_path;
  std::string query_path;
  std::string out_path;
};

void cmd_voters(const VotersArgs& args) {
  const LoadedModel model = load_model(args.model_path);
  const QuerySet queries = read_query_csv(args.query_path);
  const std::vector<PatternVector> vote_patterns =
      compute_patterns(model.rule.experts(), model.vote);
  std::string out = "query_id,voter_index,voter_label,voter_pattern\n";
  for (std::size_t i = 0; i < queries.queries.size(); ++i) {
    const PatternVector q = model.rule.pattern_of(queries.queries[i]);
    for (std::size_t j :
         matching_voters(vote_patterns, q, model.rule.alpha())) {
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             std::to_string(model.vote[j].y) + "," +
             pattern_string(vote_patterns[j].bits, q.width) + "\n";
    }
  }
  write_text_file(args.out_path, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-agreement voting classifier toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Draw a synthetic train/test pair from a generator spec");
  simulate->add_option("--generator", sim.generator_path, "generator JSON")
      ->required();
  simulate->add_option("--train", sim.train_path, "output training CSV")
      ->required();
  simulate->add_option("--test", sim.test_path, "output test CSV");
  simulate->add_option("--seed", sim.seed, "random seed");

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "Fit the aggregated classifier and save a model file");
  fit_cmd->add_option("--train", fit.train_path, "training CSV")->required();
  fit_cmd->add_option("--config", fit.config_path,
                      "fit config JSON (fit_count, alpha, roster)")
      ->required();
  fit_cmd->add_option("--out", fit.model_path, "output model JSON")->required();
  fit_cmd->add_option("--seed", fit.seed, "random seed (forest draws)")
      ->each([&fit](const std::string&) { fit.seed_given = true; });

  PredictArgs pred;
  CLI::App* predict = app.add_subcommand(
      "predict", "Score queries with a saved model");
  predict->add_option("--model", pred.model_path, "model JSON")->required();
  predict->add_option("--queries", pred.query_path, "query CSV")->required();
  predict->add_option("--out", pred.out_path, "output CSV")->required();

  CvArgs cv;
  CLI::App* cv_cmd = app.add_subcommand(
      "cv", "Cross-validate the disagreement budget and vote-sample size");
  cv_cmd->add_option("--train", cv.train_path, "training CSV")->required();
  cv_cmd->add_option("--config", cv.config_path,
                     "cv config JSON (alphas, vote_sizes, folds, roster)")
      ->required();
  cv_cmd->add_option("--out", cv.out_path, "output CSV")->required();
  cv_cmd->add_option("--seed", cv.seed, "random seed")
      ->each([&cv](const std::string&) { cv.seed_given = true; });

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Run a Monte-Carlo experiment and write its reports");
  bench_cmd->add_option("--config", bench.config_path, "experiment JSON")
      ->required();
  bench_cmd->add_option("--out", bench.out_dir, "output directory")->required();
  bench_cmd->add_option("--seed", bench.seed, "override the config seed")
      ->each([&bench](const std::string&) { bench.seed_given = true; });

  SpectroArgs spectro;
  CLI::App* spectro_cmd = app.add_subcommand(
      "spectro-prep",
      "Restrict, smooth, and max-normalize spectrum curves");
  spectro_cmd->add_option("--in", spectro.in_path, "input CSV")->required();
  spectro_cmd->add_option("--out", spectro.out_path, "output CSV")->required();
  spectro_cmd->add_option("--lo", spectro.options.lo, "interval start");
  spectro_cmd->add_option("--hi", spectro.options.hi, "interval end");
  spectro_cmd->add_option("--bandwidth", spectro.options.bandwidth,
                          "smoother bandwidth");
  spectro_cmd->add_option("--grid-size", spectro.options.grid_size,
                          "output grid size");

  VotersArgs voters;
  CLI::App* voters_cmd = app.add_subcommand(
      "voters", "Export the matching voter set for each query");
  voters_cmd->add_option("--model", voters.model_path, "model JSON")
      ->required();
  voters_cmd->add_option("--queries", voters.query_path, "query CSV")
      ->required();
  voters_cmd->add_option("--out", voters.out_path, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) cmd_simulate(sim);
    if (*fit_cmd) cmd_fit(fit);
    if (*predict) cmd_predict(pred);
    if (*cv_cmd) cmd_cv(cv);
    if (*bench_cmd) cmd_bench(bench);
    if (*spectro_cmd) cmd_spectro_prep(spectro);
    if (*voters_cmd) cmd_voters(voters);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
