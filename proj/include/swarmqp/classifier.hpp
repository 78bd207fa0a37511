#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmqp/dataset.hpp"
#include "swarmqp/geometry.hpp"
#include "swarmqp/preprocessing.hpp"
#include "swarmqp/pso.hpp"

namespace swarmqp {

/// Class ellipsoid centered at the sample mean with inverse-covariance shape,
/// scaled so that the frontier point lies on its boundary. The frontier point
/// is the class's own sample that the opposite class finds closest (Mahalanobis
/// distance to the opposite mean under the opposite covariance).
struct ClassModel {
  Vec mean;
  Mat covariance;
  Vec frontier_point;
  double boundary_scale = 0.0;  ///< squared Mahalanobis radius of the frontier point
  Ellipsoid ellipsoid;
};

/// Throws DegenerateError (pointing at preprocessing) when either class has a
/// singular covariance or fewer than n + 1 samples, UsageError when `other`
/// is empty.
ClassModel fit_class_model(const Mat& own, const Mat& other);

struct Hyperplane {
  Vec w;
  double w0 = 0.0;

  double decision(const Vec& x) const { return w.dot(x) + w0; }
};

/// Unit-norm w, w0 scaled alike. Throws UsageError for a zero w.
Hyperplane normalize_weights(const Hyperplane& h);

/// What fit_hyperplane does when the two class ellipsoids intersect.
enum class OverlapPolicy {
  Reject,  ///< throw SeparabilityError
  Shrink,  ///< scale both radii to half of the largest non-intersecting scale
};

/// Perpendicular bisector of the closest pair (x_b, y_b) between the two class
/// ellipsoids, oriented so that the first class mean has z >= 0.
struct PairwiseClassifier {
  std::array<std::string, 2> labels;
  Hyperplane hyperplane;
  Vec x_b;
  Vec y_b;
  double radius_scale = 1.0;  ///< below 1 when the ellipsoids were shrunk apart
  std::uint64_t seed = 0;
  int iterations = 0;
  double objective = 0.0;  ///< |x_b - y_b|

  Vec midpoint() const { return 0.5 * (x_b + y_b); }
};

PairwiseClassifier fit_hyperplane(const Mat& first, const Mat& second, const PsoConfig& cfg,
                                  std::array<std::string, 2> labels = {"first", "second"},
                                  OverlapPolicy overlap = OverlapPolicy::Reject);

/// True when x falls on the first label's side (z >= 0).
bool in_first_class(const PairwiseClassifier& pc, const Vec& x);
const std::string& classify(const PairwiseClassifier& pc, const Vec& x);

/// Keys: pair, dim, w, w0, x_b, y_b, seed, iterations, objective.
nlohmann::json to_json(const PairwiseClassifier& pc);

/// A pairwise classifier acting on map.apply(x).
struct PairModel {
  int first = 0;
  int second = 1;
  AffineMap map;
  PairwiseClassifier classifier;
};

struct MulticlassModel {
  std::vector<std::string> class_names;
  std::vector<PairModel> pairs;

  /// One-vs-one majority vote; ties go to the tied class with the largest
  /// normalized |z| among the hyperplanes that voted for it.
  int predict(const Vec& x) const;
};

/// Maps raw features of a class pair (rows of both classes) to the space the
/// pair's classifier is trained in.
using PairPreprocessor = std::function<AffineMap(const Mat& first, const Mat& second)>;

struct TrainOptions {
  OverlapPolicy overlap = OverlapPolicy::Reject;
  PairPreprocessor preprocess;  ///< identity when empty
};

/// One classifier per unordered class pair, pair p seeded with
/// derive_seed(cfg.seed, p). Datasets must have 2 or 3 classes. Errors from a
/// pair are rethrown with the pair's labels prefixed.
MulticlassModel multiclass_train(const Dataset& d, const PsoConfig& cfg, const TrainOptions& options = {});

nlohmann::json to_json(const MulticlassModel& model);

}  // namespace swarmqp
