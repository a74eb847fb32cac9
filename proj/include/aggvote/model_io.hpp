#pragma once

#include <string>

#include "aggvote/aggregate.hpp"

namespace aggvote {

// A saved model is a self-describing JSON envelope: the disagreement budget,
// the resolved expert specs (random draws pinned), both data splits inline,
// and the vote table. Loading refits the experts deterministically and
// verifies that the rebuilt table matches the stored one cell for cell.
struct LoadedModel {
  AggregatedClassifier rule;
  Dataset fit;
  Dataset vote;
};

std::string model_to_json(const AggregatedClassifier& rule, const Dataset& fit,
                          const Dataset& vote);
LoadedModel model_from_json(const std::string& json_text);

void save_model(const std::string& path, const AggregatedClassifier& rule,
                const Dataset& fit, const Dataset& vote);
LoadedModel load_model(const std::string& path);

// Pattern bits as text, expert 0 first: {bits=0b110, width=3} -> "011".
std::string pattern_string(std::uint64_t bits, std::size_t width);
std::uint64_t pattern_from_string(const std::string& s);

}  // namespace aggvote
