#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aggvote/core.hpp"

namespace aggvote {

// Round-trip safe formatting for doubles (shortest %.17g form).
std::string format_double(double v);

// Dataset CSV layout: one row per point, label in the last column.
// Vectors use the header "f1,...,fd,label"; curves use the grid values as
// column names plus a trailing "label" column.
Dataset read_dataset_csv(const std::string& path);
Dataset read_dataset_csv_stream(std::istream& in, const std::string& origin);
void write_dataset_csv(const std::string& path, const Dataset& d);
std::string dataset_csv_string(const Dataset& d);

// Same layout but the label column is optional; used by predict/voters.
struct QuerySet {
  std::vector<FeatureObject> queries;
  std::vector<int> labels;  // parallel to queries when has_labels
  bool has_labels = false;
};
QuerySet read_query_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace aggvote
