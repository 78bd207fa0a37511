#include "swarmqp/preprocessing.hpp"

#include <cmath>
#include <string>

#include "swarmqp/errors.hpp"

namespace swarmqp {
namespace {

constexpr double kEigenFloor = 1e-12;
constexpr double kParallelTolerance = 1e-9;

Mat stack_rows(const Mat& a, const Mat& b) {
  Mat out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

}  // namespace

AffineMap AffineMap::identity(Eigen::Index dim) { return {Vec::Zero(dim), Mat::Identity(dim, dim)}; }

Vec AffineMap::apply(const Vec& x) const {
  if (x.size() != offset.size()) throw UsageError("AffineMap: dimension mismatch");
  return matrix * (x - offset);
}

Mat AffineMap::apply_rows(const Mat& samples) const {
  if (samples.cols() != offset.size()) throw UsageError("AffineMap: dimension mismatch");
  return (samples.rowwise() - offset.transpose()) * matrix.transpose();
}

Vec Whitening::invert(const Vec& y) const { return map.offset + inverse_matrix * y; }

Whitening fit_whitening(const Mat& samples) {
  if (samples.rows() < 2) throw DegenerateError("whitening needs at least two samples");
  const Vec mean = samples.colwise().mean();
  const Mat cov = sample_covariance(samples, mean);
  for (Eigen::Index j = 0; j < cov.rows(); ++j) {
    if (cov(j, j) <= 0.0) {
      throw DegenerateError("feature " + std::to_string(j) + " has zero variance");
    }
  }
  const auto eig = eigen_spd(cov);
  const double floor = kEigenFloor * eig.values(0);
  const Vec scale = eig.values.cwiseMax(floor).cwiseSqrt();

  Whitening w;
  w.map.offset = mean;
  w.map.matrix = scale.cwiseInverse().asDiagonal() * eig.vectors.transpose();
  w.inverse_matrix = eig.vectors * scale.asDiagonal();
  return w;
}

Dataset whiten(const Dataset& d, Whitening* fitted) {
  Whitening w = fit_whitening(d.features);
  Dataset out = d;
  out.features = w.map.apply_rows(d.features);
  if (fitted != nullptr) *fitted = std::move(w);
  return out;
}

Mat project_pair_2d(const Mat& first, const Mat& second) {
  if (first.cols() != second.cols()) throw UsageError("project_pair_2d: dimension mismatch");
  if (first.cols() < 2) throw DegenerateError("project_pair_2d: need at least two features");
  if (first.rows() < 1 || second.rows() < 1) throw UsageError("project_pair_2d: empty class");

  const Vec gap = first.colwise().mean() - second.colwise().mean();
  const double gap_norm = gap.norm();
  if (!(gap_norm > 0.0)) throw DegenerateError("project_pair_2d: class means coincide");
  const Vec d1 = gap / gap_norm;

  const Mat pooled = stack_rows(first, second);
  const auto eig = eigen_spd(sample_covariance(pooled, pooled.colwise().mean()));
  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) {
    Vec d2 = eig.vectors.col(k);
    d2 -= d2.dot(d1) * d1;
    const double norm = d2.norm();
    if (norm < kParallelTolerance) continue;
    d2 /= norm;
    Mat out(2, first.cols());
    out.row(0) = d1.transpose();
    out.row(1) = d2.transpose();
    return out;
  }
  throw DegenerateError("project_pair_2d: no direction orthogonal to the mean difference");
}

AffineMap whiten_and_project_pair(const Mat& first, const Mat& second) {
  const Whitening w = fit_whitening(stack_rows(first, second));
  const Mat directions = project_pair_2d(w.map.apply_rows(first), w.map.apply_rows(second));
  return {w.map.offset, directions * w.map.matrix};
}

}  // namespace swarmqp
