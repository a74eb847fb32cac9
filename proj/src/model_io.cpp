#include "aggvote/model_io.hpp"

#include <nlohmann/json.hpp>

#include "aggvote/csv.hpp"

namespace aggvote {

namespace {

using nlohmann::json;

json dataset_json(const Dataset& d) {
  json j;
  j["kind"] = d.kind() == FeatureKind::Curve ? "curve" : "vector";
  if (d.kind() == FeatureKind::Curve) j["grid"] = d.grid();
  json points = json::array();
  for (const LabeledPoint& p : d.points()) {
    points.push_back({{"x", p.x.values}, {"y", p.y}});
  }
  j["points"] = std::move(points);
  return j;
}

Dataset dataset_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("points")) {
    throw DataError(where + ": expected a dataset object");
  }
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<double> grid;
  if (kind == "curve") {
    grid = j.at("grid").get<std::vector<double>>();
  } else if (kind != "vector") {
    throw DataError(where + ": unknown dataset kind '" + kind + "'");
  }
  std::vector<LabeledPoint> points;
  for (const json& p : j.at("points")) {
    std::vector<double> x = p.at("x").get<std::vector<double>>();
    const int y = p.at("y").get<int>();
    points.push_back({kind == "curve" ? make_curve(grid, std::move(x))
                                      : make_vector(std::move(x)),
                      y});
  }
  if (points.empty()) throw DataError(where + ": no points");
  return Dataset(std::move(points));
}

json expert_spec_json(const ExpertSpec& s) {
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
      j["seed"] = s.forest_seed;
      break;
  }
  return j;
}

ExpertSpec expert_spec_from_json(const json& j) {
  ExpertSpec s;
  s.type = expert_type_from_name(j.at("type").get<std::string>());
  switch (s.type) {
    case ExpertType::Knn:
      s.k = j.at("k").get<std::size_t>();
      if (j.contains("metric")) {
        s.metric = metric_from_name(j.at("metric").get<std::string>());
      }
      break;
    case ExpertType::Fisher:
      s.ridge = j.at("ridge").get<double>();
      break;
    case ExpertType::Forest:
      s.n_trees = j.at("n_trees").get<std::size_t>();
      s.mtry = j.at("mtry").get<std::size_t>();
      s.forest_seed = j.at("seed").get<std::uint64_t>();
      s.forest_seed_fixed = true;
      break;
  }
  return s;
}

}  // namespace

std::string pattern_string(std::uint64_t bits, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t m = 0; m < width; ++m) {
    if ((bits >> m) & 1u) s[m] = '1';
  }
  return s;
}

std::uint64_t pattern_from_string(const std::string& s) {
  if (s.empty() || s.size() > 64) {
    throw DataError("pattern string must have 1 to 64 characters");
  }
  std::uint64_t bits = 0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m] == '1') {
      bits |= std::uint64_t{1} << m;
    } else if (s[m] != '0') {
      throw DataError("pattern string must be made of 0s and 1s, got '" + s +
                      "'");
    }
  }
  return bits;
}

std::string model_to_json(const AggregatedClassifier& rule, const Dataset& fit,
                          const Dataset& vote) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "pattern_vote_model";
  j["alpha"] = rule.alpha();
  json experts = json::array();
  for (const BaseClassifier& e : rule.experts()) {
    experts.push_back(expert_spec_json(e.spec()));
  }
  j["experts"] = std::move(experts);
  j["fit_data"] = dataset_json(fit);
  j["vote_data"] = dataset_json(vote);
  json cells = json::array();
  for (const VoteCell& c : rule.table().cells()) {
    cells.push_back({{"pattern", pattern_string(c.bits, rule.width())},
                     {"count", c.count},
                     {"positives", c.positives}});
  }
  j["table"] = {{"width", rule.width()}, {"cells", std::move(cells)}};
  return j.dump(1) + "\n";
}

LoadedModel model_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "pattern_vote_model") {
      throw DataError("not a model file: kind is '" +
                      j.at("kind").get<std::string>() + "'");
    }
    if (j.at("schema_version").get<int>() != 1) {
      throw DataError("unsupported model schema_version");
    }
    const double alpha = j.at("alpha").get<double>();
    std::vector<ExpertSpec> specs;
    for (const json& e : j.at("experts")) {
      specs.push_back(expert_spec_from_json(e));
    }
    Dataset fit = dataset_from_json(j.at("fit_data"), "fit_data");
    Dataset vote = dataset_from_json(j.at("vote_data"), "vote_data");

    const json& table_json = j.at("table");
    const std::size_t width = table_json.at("width").get<std::size_t>();
    if (width != specs.size()) {
      throw DataError("model table width does not match the expert count");
    }
    std::vector<VoteCell> cells;
    for (const json& c : table_json.at("cells")) {
      const std::string pattern = c.at("pattern").get<std::string>();
      if (pattern.size() != width) {
        throw DataError("model table cell pattern '" + pattern +
                        "' does not have width " + std::to_string(width));
      }
      cells.push_back({pattern_from_string(pattern),
                       c.at("count").get<std::int64_t>(),
                       c.at("positives").get<std::int64_t>()});
    }
    const VoteTable stored = VoteTable::from_cells(width, std::move(cells));

    // Every random draw is pinned in the specs, so the refit is exact and the
    // stream goes untouched.
    RandomStream stream(0);
    auto fit_ptr = std::make_shared<const Dataset>(fit);
    std::vector<BaseClassifier> experts = fit_roster(specs, fit_ptr, stream);
    const VoteTable rebuilt = VoteTable::build(experts, vote);
    if (rebuilt.cells().size() != stored.cells().size()) {
      throw DataError("model verification failed: refit experts produce " +
                      std::to_string(rebuilt.cells().size()) +
                      " vote cells, the file stores " +
                      std::to_string(stored.cells().size()));
    }
    for (std::size_t i = 0; i < stored.cells().size(); ++i) {
      const VoteCell& a = stored.cells()[i];
      const VoteCell& b = rebuilt.cells()[i];
      if (a.bits != b.bits || a.count != b.count || a.positives != b.positives) {
        throw DataError("model verification failed at cell '" +
                        pattern_string(a.bits, width) +
                        "': stored counts do not match the refit experts");
      }
    }
    return LoadedModel{
        AggregatedClassifier(std::move(experts), rebuilt, alpha),
        std::move(fit), std::move(vote)};
  } catch (const json::exception& e) {
    throw DataError(std::string("model file is malformed: ") + e.what());
  }
}

void save_model(const std::string& path, const AggregatedClassifier& rule,
                const Dataset& fit, const Dataset& vote) {
  write_text_file(path, model_to_json(rule, fit, vote));
}

LoadedModel load_model(const std::string& path) {
  return model_from_json(read_text_file(path));
}

}  // namespace aggvote
