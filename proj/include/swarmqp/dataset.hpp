#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "swarmqp/geometry.hpp"

namespace swarmqp {

/// Labeled samples. Row i of `features` carries label labels[i], an index into
/// class_names.
struct Dataset {
  std::string name;
  Mat features;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  Eigen::Index dim() const { return features.cols(); }
  Eigen::Index size() const { return features.rows(); }
  int class_count() const { return static_cast<int>(class_names.size()); }

  /// Rows with the given label, in dataset order.
  Mat class_samples(int label) const;

  /// Rows selected by index, labels carried along.
  Dataset subset(const std::vector<Eigen::Index>& rows) const;
};

/// Two Gaussian classes with means (8, 0) and (0, 8) and shared covariance
/// [[2, 1], [1, 2]]; count samples each. Throws UsageError for count < 3.
Dataset generate_synthetic(int count_per_class, std::uint64_t seed);

/// Column layout of a dataset file.
struct DatasetSchema {
  std::string name;
  bool header = false;
  int attributes = 0;
  int label_column = 0;
  std::vector<std::string> labels;  ///< class order used for label indices
};

/// Reads a JSON schema file with keys name, header, attributes, label_column
/// and labels.
DatasetSchema load_schema(const std::string& path);

/// Throws IngestionError listing every offending row (1-based line numbers).
Dataset parse_csv(std::istream& in, const DatasetSchema& schema);
Dataset load_csv(const std::string& path, const DatasetSchema& schema);

/// Sorted by label, then lexicographically by features. Makes downstream
/// results independent of input row order.
Dataset canonical_order(const Dataset& d);

}  // namespace swarmqp
