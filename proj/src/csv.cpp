#include "aggvote/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace aggvote {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

struct ParsedCsv {
  bool is_curve = false;
  bool has_labels = false;
  std::vector<double> grid;  // curve column positions
  std::size_t dim = 0;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

ParsedCsv parse_csv(std::istream& in, const std::string& origin) {
  ParsedCsv out;
  std::string line;
  if (!std::getline(in, line)) throw DataError(origin + ": missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_row(line);
  if (header.empty()) throw DataError(origin + ": empty header row");

  out.has_labels = header.back() == "label";
  const std::size_t d = out.has_labels ? header.size() - 1 : header.size();
  if (d == 0) throw DataError(origin + ": no feature columns");
  out.dim = d;

  // Numeric headers are curve grid values; anything else is a vector header.
  std::vector<double> grid(d);
  bool numeric = true;
  for (std::size_t i = 0; i < d; ++i) {
    if (!parse_number(header[i], grid[i])) {
      numeric = false;
      break;
    }
  }
  if (numeric) {
    out.is_curve = true;
    out.grid = std::move(grid);
  }

  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++row_index;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw DataError(origin + ": row " + std::to_string(row_index) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
    std::vector<double> values(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!parse_number(cells[i], values[i])) {
        throw DataError(origin + ": row " + std::to_string(row_index) +
                        " has a non-numeric cell '" + cells[i] + "'");
      }
    }
    if (out.has_labels) {
      double y = 0;
      if (!parse_number(cells[d], y) || (y != 0.0 && y != 1.0)) {
        throw DataError(origin + ": row " + std::to_string(row_index) +
                        " has label '" + cells[d] + "', expected 0 or 1");
      }
      out.labels.push_back(static_cast<int>(y));
    }
    out.rows.push_back(std::move(values));
  }
  if (out.rows.empty()) throw DataError(origin + ": no data rows");
  return out;
}

FeatureObject row_to_feature(const ParsedCsv& csv, std::vector<double> values) {
  if (csv.is_curve) return make_curve(csv.grid, std::move(values));
  return make_vector(std::move(values));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

Dataset read_dataset_csv_stream(std::istream& in, const std::string& origin) {
  ParsedCsv csv = parse_csv(in, origin);
  if (!csv.has_labels) throw DataError(origin + ": missing trailing 'label' column");
  std::vector<LabeledPoint> points;
  points.reserve(csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    points.push_back({row_to_feature(csv, std::move(csv.rows[i])), csv.labels[i]});
  }
  return Dataset(std::move(points));
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_dataset_csv_stream(in, path);
}

std::string dataset_csv_string(const Dataset& d) {
  std::string out;
  if (d.kind() == FeatureKind::Curve) {
    const std::vector<double>& grid = d.grid();
    for (double g : grid) {
      out += format_double(g);
      out += ',';
    }
  } else {
    for (std::size_t i = 1; i <= d.dim(); ++i) {
      out += "f" + std::to_string(i) + ",";
    }
  }
  out += "label\n";
  for (const LabeledPoint& p : d.points()) {
    for (double v : p.x.values) {
      out += format_double(v);
      out += ',';
    }
    out += std::to_string(p.y);
    out += '\n';
  }
  return out;
}

void write_dataset_csv(const std::string& path, const Dataset& d) {
  write_text_file(path, dataset_csv_string(d));
}

QuerySet read_query_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  ParsedCsv csv = parse_csv(in, path);
  QuerySet out;
  out.has_labels = csv.has_labels;
  out.labels = std::move(csv.labels);
  out.queries.reserve(csv.rows.size());
  for (auto& row : csv.rows) out.queries.push_back(row_to_feature(csv, std::move(row)));
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("failed while writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aggvote
