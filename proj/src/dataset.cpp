#include "swarmqp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "swarmqp/errors.hpp"
#include "swarmqp/random.hpp"

namespace swarmqp {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_real(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Mat Dataset::class_samples(int label) const {
  const auto count = std::count(labels.begin(), labels.end(), label);
  Mat out(count, dim());
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == label) out.row(row++) = features.row(i);
  }
  return out;
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& rows) const {
  Dataset out;
  out.name = name;
  out.class_names = class_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), dim());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
    out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

Dataset generate_synthetic(int count_per_class, std::uint64_t seed) {
  if (count_per_class < 3) throw UsageError("generate_synthetic: need at least 3 samples per class");
  Mat cov(2, 2);
  cov << 2.0, 1.0, 1.0, 2.0;
  const Eigen::Matrix2d l = Eigen::Matrix2d(cov.llt().matrixL());
  const Eigen::Vector2d means[2] = {{8.0, 0.0}, {0.0, 8.0}};

  Rng rng(seed);
  Dataset d;
  d.name = "synthetic";
  d.class_names = {"class_1", "class_2"};
  d.features.resize(2 * count_per_class, 2);
  d.labels.reserve(static_cast<std::size_t>(2 * count_per_class));
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < count_per_class; ++i) {
      Eigen::Vector2d z;
      z(0) = rng.normal();
      z(1) = rng.normal();
      d.features.row(c * count_per_class + i) = (means[c] + l * z).transpose();
      d.labels.push_back(c);
    }
  }
  return d;
}

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    DatasetSchema s;
    s.name = j.value("name", std::string{});
    s.header = j.value("header", false);
    s.attributes = j.at("attributes").get<int>();
    s.label_column = j.at("label_column").get<int>();
    s.labels = j.at("labels").get<std::vector<std::string>>();
    if (s.attributes < 1 || s.label_column < 0 || s.label_column > s.attributes || s.labels.empty()) {
      throw IngestionError("schema " + path + ": inconsistent column layout");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError("schema " + path + ": " + e.what());
  }
}

Dataset parse_csv(std::istream& in, const DatasetSchema& schema) {
  const auto columns = static_cast<std::size_t>(schema.attributes + 1);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> problems;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && schema.header) continue;
    if (trim(line).empty()) continue;

    const auto fields = split_fields(line);
    if (fields.size() != columns) {
      problems.push_back("row " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                         " columns, got " + std::to_string(fields.size()));
      continue;
    }
    std::vector<double> values;
    values.reserve(columns - 1);
    int label = -1;
    std::string issue;
    for (std::size_t c = 0; c < columns; ++c) {
      if (static_cast<int>(c) == schema.label_column) {
        const auto it = std::find(schema.labels.begin(), schema.labels.end(), fields[c]);
        if (it == schema.labels.end()) {
          issue = "unknown label '" + fields[c] + "'";
        } else {
          label = static_cast<int>(it - schema.labels.begin());
        }
        continue;
      }
      double v = 0.0;
      if (!parse_real(fields[c], v)) {
        issue = "column " + std::to_string(c + 1) + " is not a number ('" + fields[c] + "')";
        break;
      }
      values.push_back(v);
    }
    if (!issue.empty()) {
      problems.push_back("row " + std::to_string(line_no) + ": " + issue);
      continue;
    }
    rows.push_back(std::move(values));
    labels.push_back(label);
  }

  if (!problems.empty()) {
    std::string msg = "malformed input (" + std::to_string(problems.size()) + " rows)";
    for (const auto& p : problems) msg += "\n  " + p;
    throw IngestionError(msg);
  }
  if (rows.empty()) throw IngestionError("no data rows");

  Dataset d;
  d.name = schema.name;
  d.class_names = schema.labels;
  d.labels = std::move(labels);
  d.features.resize(static_cast<Eigen::Index>(rows.size()), schema.attributes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < schema.attributes; ++c) {
      d.features(static_cast<Eigen::Index>(i), c) = rows[i][static_cast<std::size_t>(c)];
    }
  }
  return d;
}

Dataset load_csv(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open data file: " + path);
  try {
    return parse_csv(in, schema);
  } catch (const IngestionError& e) {
    throw IngestionError(path + ": " + e.what());
  }
}

Dataset canonical_order(const Dataset& d) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const int la = d.labels[static_cast<std::size_t>(a)];
    const int lb = d.labels[static_cast<std::size_t>(b)];
    if (la != lb) return la < lb;
    for (Eigen::Index c = 0; c < d.dim(); ++c) {
      if (d.features(a, c) != d.features(b, c)) return d.features(a, c) < d.features(b, c);
    }
    return false;
  });
  return d.subset(order);
}

}  // namespace swarmqp
