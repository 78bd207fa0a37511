#pragma once

#include "swarmqp/dataset.hpp"
#include "swarmqp/geometry.hpp"

namespace swarmqp {

/// y = matrix (x - offset). matrix may be rectangular (projection).
struct AffineMap {
  Vec offset;
  Mat matrix;

  static AffineMap identity(Eigen::Index dim);

  Vec apply(const Vec& x) const;
  /// Rows of `samples` mapped one by one.
  Mat apply_rows(const Mat& samples) const;
};

/// Rotation onto the covariance eigenbasis followed by per-component
/// 1/sqrt(eigenvalue) scaling. Eigenvalues below 1e-12 of the largest are
/// floored to that level.
struct Whitening {
  AffineMap map;
  Mat inverse_matrix;  ///< x = offset + inverse_matrix y

  Vec invert(const Vec& y) const;
};

/// Fit on the rows of `samples`. Throws DegenerateError when a feature has zero
/// variance or fewer than two samples are given.
Whitening fit_whitening(const Mat& samples);

/// Whitens a dataset with a whitening fitted on the dataset itself.
Dataset whiten(const Dataset& d, Whitening* fitted = nullptr);

/// 2 x n matrix with orthonormal rows: the normalized class mean difference,
/// then the leading covariance eigenvector of the pooled samples
/// orthogonalized against it (falling back to later eigenvectors when the
/// leading one is parallel). Throws DegenerateError for coincident means or
/// n < 2.
Mat project_pair_2d(const Mat& first, const Mat& second);

/// Whitening fitted on both classes' rows, then the pair projection computed
/// in the whitened space: the full per-pair map from raw features to 2-D.
AffineMap whiten_and_project_pair(const Mat& first, const Mat& second);

}  // namespace swarmqp
