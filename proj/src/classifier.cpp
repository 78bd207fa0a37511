#include "swarmqp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmqp/errors.hpp"
#include "swarmqp/random.hpp"
#include "swarmqp/solver.hpp"

namespace swarmqp {
namespace {

constexpr double kConditionFloor = 1e-12;
constexpr int kShrinkBisections = 60;
constexpr double kShrinkMargin = 0.5;

struct Moments {
  Vec mean;
  Mat covariance;
  Mat inverse;
};

Moments class_moments(const Mat& samples, const char* which) {
  const auto n = samples.cols();
  if (samples.rows() < n + 1) {
    throw DegenerateError(std::string(which) + " class has " + std::to_string(samples.rows()) +
                          " samples in " + std::to_string(n) +
                          " dimensions; its covariance is singular. Reduce the dimension "
                          "(whitening and pair projection) first");
  }
  Moments m;
  m.mean = samples.colwise().mean();
  m.covariance = sample_covariance(samples, m.mean);
  const auto eig = eigen_spd(m.covariance);
  if (!(eig.values(n - 1) > kConditionFloor * eig.values(0))) {
    throw DegenerateError(std::string(which) +
                          " class covariance is singular; apply whitening and pair projection first");
  }
  m.inverse = spd_inverse(m.covariance);
  return m;
}

Ellipsoid scaled(const Ellipsoid& e, double radius_scale) {
  return Ellipsoid(e.center(), e.shape() / (radius_scale * radius_scale));
}

std::string pair_name(const std::array<std::string, 2>& labels) {
  return "'" + labels[0] + "' / '" + labels[1] + "'";
}

nlohmann::json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

ClassModel fit_class_model(const Mat& own, const Mat& other) {
  if (other.rows() == 0) throw UsageError("fit_class_model: the other class has no samples");
  if (own.cols() != other.cols()) throw UsageError("fit_class_model: dimension mismatch");
  const Moments mine = class_moments(own, "own");
  const Moments theirs = class_moments(other, "other");

  Eigen::Index frontier = 0;
  double closest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < own.rows(); ++i) {
    const double d = mahalanobis_sq(own.row(i).transpose(), theirs.mean, theirs.inverse);
    if (d < closest) {
      closest = d;
      frontier = i;
    }
  }

  ClassModel m{mine.mean, mine.covariance, own.row(frontier).transpose(), 0.0,
               Ellipsoid::ball(mine.mean, 1.0)};
  m.boundary_scale = mahalanobis_sq(m.frontier_point, mine.mean, mine.inverse);
  if (!(m.boundary_scale > 0.0)) {
    throw DegenerateError("fit_class_model: frontier point coincides with the class mean");
  }
  m.ellipsoid = Ellipsoid(mine.mean, mine.inverse / m.boundary_scale);
  return m;
}

Hyperplane normalize_weights(const Hyperplane& h) {
  const double norm = h.w.norm();
  if (!(norm > 0.0)) throw UsageError("normalize_weights: zero weight vector");
  return {h.w / norm, h.w0 / norm};
}

PairwiseClassifier fit_hyperplane(const Mat& first, const Mat& second, const PsoConfig& cfg,
                                  std::array<std::string, 2> labels, OverlapPolicy overlap) {
  const ClassModel m1 = fit_class_model(first, second);
  const ClassModel m2 = fit_class_model(second, first);

  PairwiseClassifier pc;
  pc.labels = std::move(labels);
  pc.seed = cfg.seed;
  pc.iterations = cfg.max_iterations;

  Ellipsoid e1 = m1.ellipsoid;
  Ellipsoid e2 = m2.ellipsoid;
  if (ellipsoids_intersect(e1, e2)) {
    if (overlap == OverlapPolicy::Reject) {
      throw SeparabilityError("class ellipsoids intersect for pair " + pair_name(pc.labels));
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < kShrinkBisections; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (ellipsoids_intersect(scaled(e1, mid), scaled(e2, mid))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    pc.radius_scale = kShrinkMargin * lo;
    if (!(pc.radius_scale > 0.0)) {
      throw SeparabilityError("class means coincide for pair " + pair_name(pc.labels));
    }
    e1 = scaled(e1, pc.radius_scale);
    e2 = scaled(e2, pc.radius_scale);
  }

  SolveOptions options;
  options.start_near_centers = true;
  const SolveResult r = solve_two_ellipsoids({e1, e2}, cfg, options);
  pc.x_b = r.best_x;
  pc.y_b = *r.best_y;
  pc.objective = r.objective_value;

  Vec w = pc.x_b - pc.y_b;
  if (!(w.norm() > 0.0)) throw NumericError("fit_hyperplane: boundary points coincide");
  double w0 = -w.dot(pc.x_b + pc.y_b) / 2.0;
  if (w.dot(m1.mean) + w0 < 0.0) {
    w = -w;
    w0 = -w0;
  }
  pc.hyperplane = {w, w0};
  return pc;
}

bool in_first_class(const PairwiseClassifier& pc, const Vec& x) {
  if (x.size() != pc.hyperplane.w.size()) throw UsageError("classify: dimension mismatch");
  return pc.hyperplane.decision(x) >= 0.0;
}

const std::string& classify(const PairwiseClassifier& pc, const Vec& x) {
  return in_first_class(pc, x) ? pc.labels[0] : pc.labels[1];
}

nlohmann::json to_json(const PairwiseClassifier& pc) {
  return {{"pair", {pc.labels[0], pc.labels[1]}},
          {"dim", pc.hyperplane.w.size()},
          {"w", vec_json(pc.hyperplane.w)},
          {"w0", pc.hyperplane.w0},
          {"x_b", vec_json(pc.x_b)},
          {"y_b", vec_json(pc.y_b)},
          {"seed", pc.seed},
          {"iterations", pc.iterations},
          {"objective", pc.objective}};
}

int MulticlassModel::predict(const Vec& x) const {
  const auto classes = class_names.size();
  std::vector<int> votes(classes, 0);
  std::vector<double> margin(classes, 0.0);
  for (const auto& p : pairs) {
    const Vec y = p.map.apply(x);
    const Hyperplane& h = p.classifier.hyperplane;
    const double z = h.decision(y);
    const int winner = z >= 0.0 ? p.first : p.second;
    const auto k = static_cast<std::size_t>(winner);
    ++votes[k];
    margin[k] = std::max(margin[k], std::abs(z) / h.w.norm());
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < classes; ++k) {
    if (votes[k] > votes[best] || (votes[k] == votes[best] && margin[k] > margin[best])) best = k;
  }
  return static_cast<int>(best);
}

MulticlassModel multiclass_train(const Dataset& d, const PsoConfig& cfg, const TrainOptions& options) {
  const int classes = d.class_count();
  if (classes < 2 || classes > 3) {
    throw UsageError("multiclass_train: need 2 or 3 classes, got " + std::to_string(classes));
  }
  if (static_cast<std::size_t>(d.size()) != d.labels.size()) {
    throw UsageError("multiclass_train: features and labels differ in length");
  }

  MulticlassModel model;
  model.class_names = d.class_names;
  std::uint64_t pair_index = 0;
  for (int i = 0; i < classes; ++i) {
    for (int j = i + 1; j < classes; ++j, ++pair_index) {
      const std::array<std::string, 2> labels{d.class_names[static_cast<std::size_t>(i)],
                                              d.class_names[static_cast<std::size_t>(j)]};
      const std::string prefix = "pair " + pair_name(labels) + ": ";
      PairModel pm;
      pm.first = i;
      pm.second = j;
      try {
        const Mat a = d.class_samples(i);
        const Mat b = d.class_samples(j);
        pm.map = options.preprocess ? options.preprocess(a, b) : AffineMap::identity(d.dim());
        PsoConfig pair_cfg = cfg;
        pair_cfg.seed = derive_seed(cfg.seed, pair_index);
        pm.classifier =
            fit_hyperplane(pm.map.apply_rows(a), pm.map.apply_rows(b), pair_cfg, labels, options.overlap);
      } catch (const SeparabilityError& e) {
        throw SeparabilityError(prefix + e.what());
      } catch (const DegenerateError& e) {
        throw DegenerateError(prefix + e.what());
      } catch (const NumericError& e) {
        throw NumericError(prefix + e.what());
      } catch (const UsageError& e) {
        throw UsageError(prefix + e.what());
      }
      model.pairs.push_back(std::move(pm));
    }
  }
  return model;
}

nlohmann::json to_json(const MulticlassModel& model) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : model.pairs) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < p.map.matrix.rows(); ++r) rows.push_back(vec_json(p.map.matrix.row(r).transpose()));
    pairs.push_back({{"classifier", to_json(p.classifier)},
                     {"projection", {{"offset", vec_json(p.map.offset)}, {"matrix", rows}}}});
  }
  return {{"classes", model.class_names}, {"pairs", pairs}};
}

}  // namespace swarmqp
