#pragma once

#include <Eigen/Dense>

#include "swarmqp/random.hpp"

namespace swarmqp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// The region {q : (q - center)^T shape (q - center) <= 1} for a symmetric
/// positive definite shape matrix. Validated on construction.
class Ellipsoid {
 public:
  /// Throws UsageError on dimension mismatch, non-finite entries or an
  /// asymmetric shape; DegenerateError if shape is not positive definite.
  Ellipsoid(Vec center, Mat shape);

  /// Ball of the given radius.
  static Ellipsoid ball(const Vec& center, double radius);

  const Vec& center() const { return center_; }
  const Mat& shape() const { return shape_; }
  Eigen::Index dim() const { return center_.size(); }

  /// (q - center)^T shape (q - center).
  double quadratic_form(const Vec& q) const;

  /// Matrix M with M M^T = shape^{-1}; center + M u maps the unit ball onto
  /// this ellipsoid.
  const Mat& ball_map() const { return ball_map_; }

 private:
  Vec center_;
  Mat shape_;
  Mat ball_map_;
};

/// (point - mean)^T cov_inverse (point - mean).
double mahalanobis_sq(const Vec& point, const Vec& mean, const Mat& cov_inverse);

/// Boundary counts as inside.
bool contains(const Ellipsoid& e, const Vec& q);

/// Inverse of a symmetric positive definite matrix via Cholesky.
/// Throws DegenerateError when a pivot is not positive.
Mat spd_inverse(const Mat& m);

struct EigenDecomposition {
  Vec values;   ///< descending
  Mat vectors;  ///< orthonormal columns, column i pairs with values(i)
};

/// Symmetric eigendecomposition. Throws UsageError on asymmetric input.
EigenDecomposition eigen_spd(const Mat& m);

/// Uniformly distributed direction on the unit sphere in R^dim
/// (normalized standard Gaussian draw).
Vec unit_sphere_point(Eigen::Index dim, Rng& rng);

/// Uniform point in the unit ball of R^dim.
Vec unit_ball_point(Eigen::Index dim, Rng& rng);

/// Sample covariance with divisor N-1; rows of `samples` are observations.
Mat sample_covariance(const Mat& samples, const Vec& mean);

/// True when max |m_ij - m_ji| <= 1e-10 * max |m|.
bool is_symmetric(const Mat& m);

}  // namespace swarmqp
