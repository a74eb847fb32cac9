#include "aggvote/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "aggvote/aggregate.hpp"
#include "aggvote/csv.hpp"
#include "aggvote/select.hpp"

namespace aggvote {

namespace {

std::size_t generator_train_size(const GeneratorSpec& g) {
  switch (g.kind) {
    case GeneratorSpec::Kind::HighDim:
      return g.highdim.n_train;
    case GeneratorSpec::Kind::Functional:
      return g.functional.n_train;
    case GeneratorSpec::Kind::SpectroLike:
      return g.spectro.n;
  }
  return 0;
}

std::string alpha_column_name(double alpha) {
  return "aggregated(alpha=" + format_double(alpha) + ")";
}

std::vector<std::string> method_names(const ExperimentConfig& cfg) {
  std::vector<std::string> names;
  for (double a : cfg.alphas) names.push_back(alpha_column_name(a));
  if (cfg.base_columns && !cfg.random_roster) {
    for (const ExpertSpec& s : cfg.roster) {
      std::string base;
      switch (s.type) {
        case ExpertType::Knn:
          base = std::to_string(s.k) + "nn";
          break;
        case ExpertType::Fisher:
          base = "fisher";
          break;
        case ExpertType::Forest:
          base = "forest" + std::to_string(s.n_trees);
          break;
      }
      std::string name = base;
      for (int suffix = 2; std::find(names.begin(), names.end(), name) !=
                           names.end();
           ++suffix) {
        name = base + "_" + std::to_string(suffix);
      }
      names.push_back(name);
    }
  }
  if (cfg.cv_knn.on_full) names.push_back("knn_cv_full");
  if (cfg.cv_knn.on_split) names.push_back("knn_cv_split");
  return names;
}

std::vector<std::size_t> odd_values_up_to(std::size_t bound) {
  std::vector<std::size_t> out;
  for (std::size_t v = 1; v <= bound; v += 2) out.push_back(v);
  return out;
}

// Distinct odd neighbor counts, drawn uniformly and reported sorted.
std::vector<ExpertSpec> draw_random_roster(const Dataset& fit,
                                           std::size_t count,
                                           RandomStream& stream) {
  const std::int64_t pos = fit.positives();
  const std::int64_t neg = static_cast<std::int64_t>(fit.size()) - pos;
  const std::size_t bound = static_cast<std::size_t>(std::min(pos, neg));
  std::vector<std::size_t> candidates = odd_values_up_to(bound);
  if (candidates.size() < count) {
    throw DataError("random roster: only " + std::to_string(candidates.size()) +
                    " odd neighbor counts fit below the class bound " +
                    std::to_string(bound) + ", need " + std::to_string(count));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + stream.uniform_index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(count);
  std::sort(candidates.begin(), candidates.end());
  std::vector<ExpertSpec> roster(count);
  for (std::size_t i = 0; i < count; ++i) {
    roster[i].type = ExpertType::Knn;
    roster[i].k = candidates[i];
  }
  return roster;
}

Dataset smooth_classwise(const Dataset& d,
                         const std::vector<std::vector<double>>& w1,
                         const std::vector<std::vector<double>>& w0) {
  std::vector<LabeledPoint> pts;
  pts.reserve(d.size());
  for (const LabeledPoint& p : d.points()) {
    pts.push_back({nw_apply(p.y != 0 ? w1 : w0, d.grid(), p.x), p.y});
  }
  return Dataset(std::move(pts));
}

std::int64_t knn_test_miscount(std::shared_ptr<const Dataset> train,
                               std::size_t k, const Dataset& test) {
  const std::vector<ExpertSpec> spec(1, [&] {
    ExpertSpec s;
    s.type = ExpertType::Knn;
    s.k = k;
    return s;
  }());
  RandomStream unused(0);
  const std::vector<BaseClassifier> expert =
      fit_roster(spec, std::move(train), unused);
  const std::vector<PatternVector> patterns = compute_patterns(expert, test);
  std::int64_t wrong = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    wrong += patterns[i].bit(0) != test[i].y;
  }
  return wrong;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.replicates == 0) {
    throw ConfigError("replicates must be at least 1");
  }
  if (cfg.threads == 0) throw ConfigError("threads must be at least 1");
  switch (cfg.generator.kind) {
    case GeneratorSpec::Kind::HighDim:
      validate(cfg.generator.highdim);
      if (cfg.generator.highdim.n_test == 0) {
        throw ConfigError("n_test must be at least 1");
      }
      if (cfg.generator.presmooth) {
        throw ConfigError("presmooth applies to curve generators only");
      }
      break;
    case GeneratorSpec::Kind::Functional:
      validate(cfg.generator.functional);
      if (cfg.generator.functional.n_test_per_class == 0) {
        throw ConfigError("n_test_per_class must be at least 1");
      }
      break;
    case GeneratorSpec::Kind::SpectroLike:
      if (cfg.generator.spectro.n < 2) {
        throw ConfigError("spectro_like: n_train must be at least 2");
      }
      if (cfg.generator.spectro_n_test == 0) {
        throw ConfigError("spectro_like: n_test must be at least 1");
      }
      break;
  }
  const std::size_t n = generator_train_size(cfg.generator);
  if (cfg.fit_count == 0) {
    throw ConfigError("fit_count must be at least 1");
  }
  if (cfg.fit_count >= n) {
    throw ConfigError("fit_count " + std::to_string(cfg.fit_count) +
                      " must be smaller than the training size " +
                      std::to_string(n));
  }
  if (cfg.random_roster) {
    if (cfg.random_roster->count == 0) {
      throw ConfigError("random_roster.count must be at least 1");
    }
    if (!cfg.roster.empty()) {
      throw ConfigError("give either roster or random_roster, not both");
    }
  } else if (cfg.roster.empty()) {
    throw ConfigError("roster is empty and no random_roster given");
  }
  if (cfg.alphas.empty()) throw ConfigError("alphas is empty");
  const std::size_t width =
      cfg.random_roster ? cfg.random_roster->count : cfg.roster.size();
  for (double a : cfg.alphas) allowed_disagreements(a, width);
  if (cfg.generator.presmooth &&
      (!(cfg.generator.presmooth->h_label1 > 0.0) ||
       !(cfg.generator.presmooth->h_label0 > 0.0))) {
    throw ConfigError("presmooth bandwidths must be positive");
  }
}

std::pair<Dataset, Dataset> generate(const GeneratorSpec& g,
                                     RandomStream& stream) {
  switch (g.kind) {
    case GeneratorSpec::Kind::HighDim:
      return gen_highdim(g.highdim, stream);
    case GeneratorSpec::Kind::Functional:
      return gen_functional(g.functional, stream);
    case GeneratorSpec::Kind::SpectroLike: {
      SpectroLikeConfig total = g.spectro;
      total.n += g.spectro_n_test;
      Dataset all = gen_spectro_like(total, stream);
      if (g.spectro_n_test == 0) return {std::move(all), Dataset()};
      return split_sample(all, g.spectro.n);
    }
  }
  throw ConfigError("unknown generator kind");
}

Dataset apply_presmooth(const GeneratorSpec& g, const Dataset& train) {
  if (!g.presmooth) return train;
  if (train.kind() != FeatureKind::Curve) {
    throw ConfigError("presmooth applies to curve generators only");
  }
  const std::vector<std::vector<double>> w1 =
      nw_weight_matrix(train.grid(), train.grid(), g.presmooth->h_label1);
  const std::vector<std::vector<double>> w0 =
      nw_weight_matrix(train.grid(), train.grid(), g.presmooth->h_label0);
  return smooth_classwise(train, w1, w0);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);

  const std::vector<std::string> names = method_names(cfg);
  const std::size_t n_methods = names.size();
  std::vector<std::vector<std::int64_t>> outcomes(cfg.replicates);
  std::atomic<std::size_t> test_size_holder{0};

  auto run_replicate = [&](std::size_t r) {
    RandomStream stream(SeedSpec{cfg.seed, r});
    auto [train, test] = generate(cfg.generator, stream);
    if (test.empty()) {
      throw ConfigError("experiment needs a nonempty test set");
    }
    train = apply_presmooth(cfg.generator, train);

    auto [fit, vote] = split_sample(train, cfg.fit_count);
    auto fit_ptr = std::make_shared<const Dataset>(std::move(fit));
    const std::vector<ExpertSpec> roster =
        cfg.random_roster
            ? draw_random_roster(*fit_ptr, cfg.random_roster->count, stream)
            : cfg.roster;
    const std::vector<BaseClassifier> experts =
        fit_roster(roster, fit_ptr, stream);

    const std::vector<PatternVector> vote_patterns =
        compute_patterns(experts, vote);
    const std::vector<PatternVector> test_patterns =
        compute_patterns(experts, test);
    std::vector<int> vote_labels(vote.size());
    for (std::size_t i = 0; i < vote.size(); ++i) vote_labels[i] = vote[i].y;
    const VoteTable table =
        VoteTable::from_patterns(roster.size(), vote_patterns, vote_labels);

    std::vector<std::int64_t> counts;
    counts.reserve(n_methods);
    for (double alpha : cfg.alphas) {
      const AlphaNeighborhood hood(table, alpha);
      std::int64_t wrong = 0;
      for (std::size_t i = 0; i < test.size(); ++i) {
        wrong += hood.label(test_patterns[i]) != test[i].y;
      }
      counts.push_back(wrong);
    }
    if (cfg.base_columns && !cfg.random_roster) {
      for (std::size_t m = 0; m < experts.size(); ++m) {
        std::int64_t wrong = 0;
        for (std::size_t i = 0; i < test.size(); ++i) {
          wrong += test_patterns[i].bit(m) != test[i].y;
        }
        counts.push_back(wrong);
      }
    }
    if (cfg.cv_knn.on_full || cfg.cv_knn.on_split) {
      const Metric metric = default_metric(train.kind());
      auto cv_column = [&](const Dataset& sample) {
        const std::int64_t pos = sample.positives();
        const std::int64_t neg = static_cast<std::int64_t>(sample.size()) - pos;
        const std::vector<std::size_t> candidates =
            odd_values_up_to(static_cast<std::size_t>(std::min(pos, neg)));
        if (candidates.empty()) {
          throw DataError("cv knn column: a class is empty");
        }
        const CvKnnResult cv =
            cv_knn(sample, candidates, metric, cfg.cv_knn.folds, stream);
        return knn_test_miscount(std::make_shared<const Dataset>(sample),
                                 cv.chosen_k, test);
      };
      if (cfg.cv_knn.on_full) counts.push_back(cv_column(train));
      if (cfg.cv_knn.on_split) counts.push_back(cv_column(*fit_ptr));
    }

    test_size_holder.store(test.size(), std::memory_order_relaxed);
    outcomes[r] = std::move(counts);
  };

  std::mutex error_mutex;
  std::size_t error_replicate = cfg.replicates;
  std::exception_ptr error;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= cfg.replicates) return;
      try {
        run_replicate(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (r < error_replicate) {
          error_replicate = r;
          error = std::current_exception();
        }
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.threads, cfg.replicates);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) {
    const std::string at = "replicate " + std::to_string(error_replicate) + ": ";
    try {
      std::rethrow_exception(error);
    } catch (const ConfigError& e) {
      throw ConfigError(at + e.what());
    } catch (const DataError& e) {
      throw DataError(at + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(at + e.what());
    }
  }

  ExperimentReport report;
  const std::size_t n = generator_train_size(cfg.generator);
  report.design = std::to_string(cfg.fit_count) + "/" +
                  std::to_string(n - cfg.fit_count);
  report.test_size = test_size_holder.load();
  report.replicates = cfg.replicates;
  report.methods.resize(n_methods);
  for (std::size_t m = 0; m < n_methods; ++m) {
    MethodResult& method = report.methods[m];
    method.name = names[m];
    method.miscounts.resize(cfg.replicates);
    method.errors.resize(cfg.replicates);
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      method.miscounts[r] = outcomes[r][m];
      method.errors[r] = static_cast<double>(outcomes[r][m]) /
                         static_cast<double>(report.test_size);
    }
    method.summary = summarize(method.errors);
  }
  return report;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("summarize: empty sample");
  Summary s;
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  if (n == 1) {
    s.sd = 0.0;
    s.sd_degenerate = true;
  } else {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const auto median_of = [](const std::vector<double>& v) {
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
  };
  s.median = median_of(sorted);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(sorted[i] - s.median);
  std::sort(dev.begin(), dev.end());
  s.mad = median_of(dev);
  return s;
}

std::string report_csv(const ExperimentReport& r) {
  std::string out =
      "method,replicates,test_size,mean,sd,mc_se,median,mad,sd_degenerate\n";
  for (const MethodResult& m : r.methods) {
    const double mc_se =
        m.summary.sd / std::sqrt(static_cast<double>(r.replicates));
    out += m.name + "," + std::to_string(r.replicates) + "," +
           std::to_string(r.test_size) + "," + format_double(m.summary.mean) +
           "," + format_double(m.summary.sd) + "," + format_double(mc_se) +
           "," + format_double(m.summary.median) + "," +
           format_double(m.summary.mad) + "," +
           (m.summary.sd_degenerate ? "1" : "0") + "\n";
  }
  return out;
}

namespace {

std::string three_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string report_markdown(const ExperimentReport& r) {
  std::string header = "| design |";
  std::string rule = "| --- |";
  for (const MethodResult& m : r.methods) {
    header += " " + m.name + " |";
    rule += " --- |";
  }
  std::string mean_row = "| " + r.design + " mean (sd) |";
  std::string median_row = "| " + r.design + " median (MAD) |";
  for (const MethodResult& m : r.methods) {
    mean_row += " " + three_decimals(m.summary.mean) + " (" +
                three_decimals(m.summary.sd) + ") |";
    median_row += " " + three_decimals(m.summary.median) + " (" +
                  three_decimals(m.summary.mad) + ") |";
  }
  return header + "\n" + rule + "\n" + mean_row + "\n" + median_row + "\n";
}

std::string raw_errors_csv(const ExperimentReport& r) {
  std::string out = "replicate,method,miscount,test_size,error\n";
  for (std::size_t rep = 0; rep < r.replicates; ++rep) {
    for (const MethodResult& m : r.methods) {
      out += std::to_string(rep) + "," + m.name + "," +
             std::to_string(m.miscounts[rep]) + "," +
             std::to_string(r.test_size) + "," + format_double(m.errors[rep]) +
             "\n";
    }
  }
  return out;
}

namespace {

using nlohmann::json;

json require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  return j;
}

template <typename T>
T field_or(const json& j, const std::string& name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + name + "' has the wrong type");
  }
}

template <typename T>
T required_field(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ConfigError("missing field '" + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + name + "' has the wrong type");
  }
}

ExpertSpec parse_expert(const json& j) {
  require_object(j, "roster entry");
  ExpertSpec s;
  s.type = expert_type_from_name(required_field<std::string>(j, "type"));
  switch (s.type) {
    case ExpertType::Knn:
      s.k = required_field<std::size_t>(j, "k");
      if (j.contains("metric")) {
        s.metric = metric_from_name(j.at("metric").get<std::string>());
      }
      break;
    case ExpertType::Fisher:
      s.ridge = field_or<double>(j, "ridge", 0.0);
      break;
    case ExpertType::Forest:
      s.n_trees = field_or<std::size_t>(j, "n_trees", 100);
      s.mtry = field_or<std::size_t>(j, "mtry", 0);
      if (j.contains("seed")) {
        s.forest_seed = j.at("seed").get<std::uint64_t>();
        s.forest_seed_fixed = true;
      }
      break;
  }
  return s;
}

json expert_json(const ExpertSpec& s) {
  json j;
  j["type"] = expert_type_name(s.type);
  switch (s.type) {
    case ExpertType::Knn:
      j["k"] = s.k;
      if (s.metric) j["metric"] = metric_name(*s.metric);
      break;
    case ExpertType::Fisher:
      j["ridge"] = s.ridge;
      break;
    case ExpertType::Forest:
      j["n_trees"] = s.n_trees;
      j["mtry"] = s.mtry;
      if (s.forest_seed_fixed) j["seed"] = s.forest_seed;
      break;
  }
  return j;
}

GeneratorSpec parse_generator(const json& j) {
  require_object(j, "generator");
  GeneratorSpec g;
  const std::string type = required_field<std::string>(j, "type");
  if (type == "highdim") {
    g.kind = GeneratorSpec::Kind::HighDim;
    g.highdim.n_train = required_field<std::size_t>(j, "n_train");
    g.highdim.n_test = field_or<std::size_t>(j, "n_test", 200);
    g.highdim.dim = field_or<std::size_t>(j, "dim", 150);
    g.highdim.shift = field_or<double>(j, "shift", 0.25);
    g.highdim.p_class1 = field_or<double>(j, "p_class1", 0.75);
    g.highdim.half_width = field_or<double>(j, "half_width", 2.0);
  } else if (type == "functional") {
    g.kind = GeneratorSpec::Kind::Functional;
    const std::string model = required_field<std::string>(j, "model");
    if (model == "I") {
      g.functional.model = FunctionalModel::I;
    } else if (model == "II") {
      g.functional.model = FunctionalModel::II;
    } else {
      throw ConfigError("generator.model must be \"I\" or \"II\", got \"" +
                        model + "\"");
    }
    g.functional.n_train = required_field<std::size_t>(j, "n_train");
    g.functional.n_test_per_class =
        field_or<std::size_t>(j, "n_test_per_class", 100);
    g.functional.grid_size = field_or<std::size_t>(j, "grid_size", 100);
  } else if (type == "spectro_like") {
    g.kind = GeneratorSpec::Kind::SpectroLike;
    g.spectro.n = required_field<std::size_t>(j, "n_train");
    g.spectro.grid_size = field_or<std::size_t>(j, "grid_size", 350);
    g.spectro.lo = field_or<double>(j, "lo", 6500.0);
    g.spectro.hi = field_or<double>(j, "hi", 10000.0);
    g.spectro_n_test = field_or<std::size_t>(j, "n_test", 0);
  } else {
    throw ConfigError("unknown generator type '" + type + "'");
  }
  if (j.contains("presmooth")) {
    const json p = require_object(j.at("presmooth"), "presmooth");
    PreSmooth ps;
    ps.h_label1 = required_field<double>(p, "h_label1");
    ps.h_label0 = required_field<double>(p, "h_label0");
    g.presmooth = ps;
  }
  return g;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(j, "config");
  const int version = field_or<int>(j, "schema_version", 1);
  if (version != 1) {
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  }
  ExperimentConfig cfg;
  cfg.seed = field_or<std::uint64_t>(j, "seed", 1);
  cfg.replicates = field_or<std::size_t>(j, "replicates", 100);
  cfg.threads = field_or<std::size_t>(j, "threads", 1);
  cfg.generator = parse_generator(
      require_object(required_field<json>(j, "generator"), "generator"));
  cfg.fit_count = required_field<std::size_t>(j, "fit_count");
  if (j.contains("roster")) {
    const json roster = j.at("roster");
    if (!roster.is_array()) throw ConfigError("roster must be an array");
    for (const json& e : roster) cfg.roster.push_back(parse_expert(e));
  }
  if (j.contains("random_roster")) {
    RandomOddKnnRoster rr;
    rr.count = field_or<std::size_t>(
        require_object(j.at("random_roster"), "random_roster"), "count", 10);
    cfg.random_roster = rr;
  }
  if (j.contains("alphas")) {
    cfg.alphas = j.at("alphas").get<std::vector<double>>();
  }
  cfg.base_columns = field_or<bool>(j, "base_columns", true);
  if (j.contains("cv_knn")) {
    const json c = require_object(j.at("cv_knn"), "cv_knn");
    cfg.cv_knn.on_full = field_or<bool>(c, "on_full", false);
    cfg.cv_knn.on_split = field_or<bool>(c, "on_split", false);
    cfg.cv_knn.folds = field_or<std::size_t>(c, "folds", 5);
  }
  validate(cfg);
  return cfg;
}

std::string experiment_config_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["seed"] = cfg.seed;
  j["replicates"] = cfg.replicates;
  j["threads"] = cfg.threads;
  json g;
  switch (cfg.generator.kind) {
    case GeneratorSpec::Kind::HighDim:
      g["type"] = "highdim";
      g["n_train"] = cfg.generator.highdim.n_train;
      g["n_test"] = cfg.generator.highdim.n_test;
      g["dim"] = cfg.generator.highdim.dim;
      g["shift"] = cfg.generator.highdim.shift;
      g["p_class1"] = cfg.generator.highdim.p_class1;
      g["half_width"] = cfg.generator.highdim.half_width;
      break;
    case GeneratorSpec::Kind::Functional:
      g["type"] = "functional";
      g["model"] = cfg.generator.functional.model == FunctionalModel::I
                       ? "I"
                       : "II";
      g["n_train"] = cfg.generator.functional.n_train;
      g["n_test_per_class"] = cfg.generator.functional.n_test_per_class;
      g["grid_size"] = cfg.generator.functional.grid_size;
      break;
    case GeneratorSpec::Kind::SpectroLike:
      g["type"] = "spectro_like";
      g["n_train"] = cfg.generator.spectro.n;
      g["n_test"] = cfg.generator.spectro_n_test;
      g["grid_size"] = cfg.generator.spectro.grid_size;
      g["lo"] = cfg.generator.spectro.lo;
      g["hi"] = cfg.generator.spectro.hi;
      break;
  }
  if (cfg.generator.presmooth) {
    g["presmooth"] = {{"h_label1", cfg.generator.presmooth->h_label1},
                      {"h_label0", cfg.generator.presmooth->h_label0}};
  }
  j["generator"] = g;
  j["fit_count"] = cfg.fit_count;
  if (!cfg.roster.empty()) {
    json roster = json::array();
    for (const ExpertSpec& s : cfg.roster) roster.push_back(expert_json(s));
    j["roster"] = roster;
  }
  if (cfg.random_roster) {
    j["random_roster"] = {{"count", cfg.random_roster->count}};
  }
  j["alphas"] = cfg.alphas;
  j["base_columns"] = cfg.base_columns;
  if (cfg.cv_knn.on_full || cfg.cv_knn.on_split) {
    j["cv_knn"] = {{"on_full", cfg.cv_knn.on_full},
                   {"on_split", cfg.cv_knn.on_split},
                   {"folds", cfg.cv_knn.folds}};
  }
  return j.dump(2) + "\n";
}

GeneratorSpec parse_generator_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("generator spec is not valid JSON: ") +
                      e.what());
  }
  return parse_generator(j);
}

std::vector<ExpertSpec> parse_roster_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("roster spec is not valid JSON: ") +
                      e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw ConfigError("roster spec must be a nonempty JSON array");
  }
  std::vector<ExpertSpec> roster;
  for (const json& e : j) roster.push_back(parse_expert(e));
  return roster;
}

}  // namespace aggvote
