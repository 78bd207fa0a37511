#include "swarmqp/geometry.hpp"

#include <cmath>
#include <string>

#include "swarmqp/errors.hpp"

namespace swarmqp {
namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

}  // namespace

bool is_symmetric(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale;
}

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
  if (center_.size() < 1) throw UsageError("ellipsoid: dimension must be at least 1");
  if (shape_.rows() != shape_.cols()) throw UsageError("ellipsoid: shape matrix is not square");
  require_same_dim(center_.size(), shape_.rows(), "ellipsoid");
  if (!center_.allFinite() || !shape_.allFinite()) {
    throw UsageError("ellipsoid: non-finite center or shape entry");
  }
  if (!is_symmetric(shape_)) throw UsageError("ellipsoid: shape matrix is not symmetric");

  Eigen::LLT<Mat> llt(shape_);
  if (llt.info() != Eigen::Success) {
    throw DegenerateError("ellipsoid: shape matrix is not positive definite");
  }
  // shape = U^T U with U = L^T, so x = center + U^{-1} u has quadratic form |u|^2.
  const Mat upper = llt.matrixU();
  ball_map_ = upper.triangularView<Eigen::Upper>().solve(Mat::Identity(dim(), dim()));
}

Ellipsoid Ellipsoid::ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw UsageError("ellipsoid: ball radius must be positive");
  const auto n = center.size();
  return Ellipsoid(center, Mat::Identity(n, n) / (radius * radius));
}

double Ellipsoid::quadratic_form(const Vec& q) const {
  require_same_dim(q.size(), dim(), "quadratic_form");
  const Vec d = q - center_;
  return d.dot(shape_ * d);
}

double mahalanobis_sq(const Vec& point, const Vec& mean, const Mat& cov_inverse) {
  require_same_dim(point.size(), mean.size(), "mahalanobis_sq");
  require_same_dim(point.size(), cov_inverse.rows(), "mahalanobis_sq");
  require_same_dim(cov_inverse.rows(), cov_inverse.cols(), "mahalanobis_sq");
  const Vec d = point - mean;
  return d.dot(cov_inverse * d);
}

bool contains(const Ellipsoid& e, const Vec& q) { return e.quadratic_form(q) <= 1.0; }

Mat spd_inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw UsageError("spd_inverse: matrix is not square");
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DegenerateError("spd_inverse: matrix is not positive definite");
  }
  Mat inv = llt.solve(Mat::Identity(m.rows(), m.cols()));
  return 0.5 * (inv + inv.transpose());
}

EigenDecomposition eigen_spd(const Mat& m) {
  if (!is_symmetric(m)) throw UsageError("eigen_spd: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success) throw NumericError("eigen_spd: eigensolver failed");
  // Eigen returns ascending order.
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Vec unit_sphere_point(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw UsageError("unit_sphere_point: dimension must be at least 1");
  Vec v(dim);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

Vec unit_ball_point(Eigen::Index dim, Rng& rng) {
  const Vec dir = unit_sphere_point(dim, rng);
  const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim));
  return radius * dir;
}

Mat sample_covariance(const Mat& samples, const Vec& mean) {
  if (samples.rows() < 2) throw DegenerateError("covariance needs at least two samples");
  const Mat centered = samples.rowwise() - mean.transpose();
  Mat cov = centered.transpose() * centered / static_cast<double>(samples.rows() - 1);
  return 0.5 * (cov + cov.transpose());
}

}  // namespace swarmqp
