#include <doctest.h>

#include <cmath>

#include "swarmqp/errors.hpp"
#include "swarmqp/geometry.hpp"

using namespace swarmqp;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Mat m2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("mahalanobis_sq expands the quadratic form") {
    CHECK(mahalanobis_sq(v2(0, 0), v2(0, 0), m2(2, 1, 1, 2)) == 0.0);
    CHECK(mahalanobis_sq(v2(1, 0), v2(0, 0), Mat::Identity(2, 2)) == doctest::Approx(1.0));
    // 2*2^2 + 2*(2*1*1) + 2*1^2
    CHECK(mahalanobis_sq(v2(2, 1), v2(0, 0), m2(2, 1, 1, 2)) == doctest::Approx(14.0));
    CHECK_THROWS_AS(mahalanobis_sq(Vec::Zero(3), v2(0, 0), Mat::Identity(2, 2)), UsageError);
  }

  TEST_CASE("contains treats the boundary as inside") {
    const Ellipsoid unit = Ellipsoid::ball(v2(0, 0), 1.0);
    CHECK(contains(unit, v2(0, 0)));
    CHECK(contains(unit, v2(1, 0)));
    CHECK_FALSE(contains(unit, v2(1.001, 0)));
    CHECK_THROWS_AS(contains(unit, Vec::Zero(3)), UsageError);
  }

  TEST_CASE("ellipsoid construction validates its inputs") {
    CHECK_THROWS_AS(Ellipsoid(v2(0, 0), Mat::Identity(3, 3)), UsageError);
    CHECK_THROWS_AS(Ellipsoid(v2(0, 0), m2(1, 0.5, 0, 1)), UsageError);
    CHECK_THROWS_AS(Ellipsoid(v2(0, NAN), Mat::Identity(2, 2)), UsageError);
    CHECK_THROWS_AS(Ellipsoid(v2(0, 0), m2(1, 0, 0, -1)), DegenerateError);
    CHECK_THROWS_AS(Ellipsoid(v2(0, 0), m2(1, 1, 1, 1)), DegenerateError);
  }

  TEST_CASE("ball map sends the unit circle onto the boundary") {
    const Ellipsoid e(v2(1, -2), m2(2, 1, 1, 2));
    const Mat& m = e.ball_map();
    CHECK((m * m.transpose() - m2(2, 1, 1, 2).inverse()).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 16; ++i) {
      const double t = 0.4 * i;
      const Vec q = e.center() + m * v2(std::cos(t), std::sin(t));
      CHECK(e.quadratic_form(q) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("spd_inverse") {
    CHECK((spd_inverse(Mat::Identity(2, 2)) - Mat::Identity(2, 2)).norm() < 1e-14);
    CHECK((spd_inverse(m2(2, 0, 0, 4)) - m2(0.5, 0, 0, 0.25)).norm() < 1e-14);
    const Mat inv = spd_inverse(m2(2, 1, 1, 2));
    CHECK((inv - m2(2, -1, -1, 2) / 3.0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m2(2, 1, 1, 2) * inv - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK_THROWS_AS(spd_inverse(m2(1, 2, 2, 1)), DegenerateError);
  }

  TEST_CASE("eigen_spd sorts descending and reconstructs") {
    const auto d = eigen_spd(m2(3, 0, 0, 1));
    CHECK(d.values(0) == doctest::Approx(3.0));
    CHECK(d.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(1.0));

    const Mat m = m2(2, 1, 1, 2);
    const auto e = eigen_spd(m);
    CHECK(e.values(0) == doctest::Approx(3.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors.col(0).dot(v2(1, 1) / std::sqrt(2.0))) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors.col(1).dot(v2(1, -1) / std::sqrt(2.0))) == doctest::Approx(1.0));
    for (int i = 0; i < 2; ++i) {
      CHECK((m * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK((e.vectors.transpose() * e.vectors - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);

    const auto id = eigen_spd(Mat::Identity(2, 2));
    CHECK(id.values(0) == doctest::Approx(1.0));
    CHECK(id.values(1) == doctest::Approx(1.0));

    CHECK_THROWS_AS(eigen_spd(m2(1, 2, 0, 1)), UsageError);
  }

  TEST_CASE("unit_sphere_point") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
      const Vec p = unit_sphere_point(1, rng);
      CHECK(std::abs(p(0)) == 1.0);
    }
    for (int i = 0; i < 100; ++i) CHECK(std::abs(unit_sphere_point(2, rng).norm() - 1.0) < 1e-12);

    Vec mean = Vec::Zero(3);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) mean += unit_sphere_point(3, rng);
    mean /= draws;
    CHECK(mean.cwiseAbs().maxCoeff() < 0.02);

    CHECK_THROWS_AS(unit_sphere_point(0, rng), UsageError);
  }

  TEST_CASE("unit_ball_point stays in the ball") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) CHECK(unit_ball_point(3, rng).norm() <= 1.0);
  }

  TEST_CASE("sample covariance uses the N-1 divisor") {
    Mat x(3, 2);
    x << 1, 2, 3, 6, 5, 4;
    const Vec mean = x.colwise().mean();
    const Mat c = sample_covariance(x, mean);
    // column 1: 1,3,5 (mean 3); column 2: 2,6,4 (mean 4)
    CHECK(c(0, 0) == doctest::Approx((4 + 0 + 4) / 2.0));
    CHECK(c(1, 1) == doctest::Approx((4 + 4 + 0) / 2.0));
    CHECK(c(0, 1) == doctest::Approx(((-2) * (-2) + 0 * 2 + 2 * 0) / 2.0));
    CHECK_THROWS_AS(sample_covariance(x.topRows(1), mean), DegenerateError);
  }

  TEST_CASE("is_symmetric uses a relative tolerance") {
    CHECK(is_symmetric(m2(1e6, 1, 1 + 1e-6, 1)));
    CHECK_FALSE(is_symmetric(m2(1, 1, 1.001, 1)));
  }
}
