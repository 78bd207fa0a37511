#pragma once

#include "swarmqp/geometry.hpp"
#include "swarmqp/solver.hpp"

namespace swarmqp {

/// Localization ellipsoid {x : (x - center)^T shape^{-1} (x - center) <= 1}.
struct EllipsoidMethodState {
  Vec center;
  Mat shape;
  double best_feasible_value = 0.0;
  int iteration = 0;
};

/// Central-cut ellipsoid method for maximizing a^T x over an ellipsoidal
/// constraint. Starts from the constraint ellipsoid itself, so the first
/// center is feasible. Deterministic.
class EllipsoidMethod {
 public:
  EllipsoidMethod(Vec a, Ellipsoid region);

  /// One cut: objective cut a^T x >= a^T center when the center is feasible,
  /// otherwise the constraint-gradient cut through the center.
  void step();

  const EllipsoidMethodState& state() const { return state_; }

 private:
  Vec a_;
  Ellipsoid region_;
  EllipsoidMethodState state_;
};

/// Trace of (iteration, best feasible a^T x), iteration 0 included.
Trace ellipsoid_method_lp(const Vec& a, const Ellipsoid& region, int iterations);

struct InteriorStepState {
  Vec current;  ///< strictly inside the constraint
  double delta = 0.5;
  int iteration = 0;
};

/// Damped interior ascent: x <- x + delta H(x)^{-1} a, where H is the Hessian
/// of the barrier -log(1 - q(x)) and q the constraint's quadratic form. The
/// step shrinks as the boundary is approached; it is halved further whenever a
/// candidate would not be strictly interior.
class InteriorStep {
 public:
  InteriorStep(Vec a, Ellipsoid region, double delta);

  void step();

  const InteriorStepState& state() const { return state_; }

 private:
  Vec a_;
  Ellipsoid region_;
  InteriorStepState state_;
};

/// Trace of (iteration, a^T x), iteration 0 is the region center.
Trace interior_step_lp(const Vec& a, const Ellipsoid& region, double delta, int iterations);

}  // namespace swarmqp
