#include "swarmqp/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "swarmqp/errors.hpp"

namespace swarmqp {
namespace {

void check_objective(const Vec& a, const Ellipsoid& region, const char* who) {
  if (a.size() != region.dim()) throw UsageError(std::string(who) + ": dimension mismatch");
  if (!a.allFinite() || a.norm() == 0.0) {
    throw UsageError(std::string(who) + ": objective vector must be nonzero and finite");
  }
}

}  // namespace

EllipsoidMethod::EllipsoidMethod(Vec a, Ellipsoid region)
    : a_(std::move(a)), region_(std::move(region)) {
  check_objective(a_, region_, "ellipsoid_method");
  state_.center = region_.center();
  state_.shape = spd_inverse(region_.shape());
  state_.best_feasible_value = a_.dot(state_.center);
}

void EllipsoidMethod::step() {
  const auto n = static_cast<double>(a_.size());
  Vec& z = state_.center;
  Mat& q = state_.shape;

  // Keep the half-space g^T (x - z) <= 0.
  Vec g;
  if (contains(region_, z)) {
    state_.best_feasible_value = std::max(state_.best_feasible_value, a_.dot(z));
    g = -a_;
  } else {
    g = region_.shape() * (z - region_.center());
  }

  const Vec qg = q * g;
  const double gqg = g.dot(qg);
  ++state_.iteration;
  if (!(gqg > 0.0) || !std::isfinite(gqg)) return;  // localization ellipsoid exhausted

  const Vec step = qg / std::sqrt(gqg);
  if (a_.size() == 1) {
    z -= step / 2.0;
    q /= 4.0;
  } else {
    z -= step / (n + 1.0);
    q = (n * n / (n * n - 1.0)) * (q - (2.0 / (n + 1.0)) * step * step.transpose());
    q = 0.5 * (q + q.transpose()).eval();
  }
  if (contains(region_, z)) {
    state_.best_feasible_value = std::max(state_.best_feasible_value, a_.dot(z));
  }
}

Trace ellipsoid_method_lp(const Vec& a, const Ellipsoid& region, int iterations) {
  if (iterations <= 0) throw UsageError("ellipsoid_method_lp: iterations must be positive");
  EllipsoidMethod method(a, region);
  Trace trace;
  trace.reserve(static_cast<std::size_t>(iterations) + 1);
  trace.push_back({0, method.state().best_feasible_value});
  for (int k = 1; k <= iterations; ++k) {
    method.step();
    trace.push_back({k, method.state().best_feasible_value});
  }
  return trace;
}

InteriorStep::InteriorStep(Vec a, Ellipsoid region, double delta)
    : a_(std::move(a)), region_(std::move(region)) {
  check_objective(a_, region_, "interior_step");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("interior_step: delta must lie in (0, 1)");
  state_.current = region_.center();
  state_.delta = delta;
}

void InteriorStep::step() {
  const Vec& x = state_.current;
  const double slack = 1.0 - region_.quadratic_form(x);
  const Vec grad_q = 2.0 * region_.shape() * (x - region_.center());
  const Mat hessian =
      2.0 * region_.shape() / slack + grad_q * grad_q.transpose() / (slack * slack);
  const Vec direction = hessian.llt().solve(a_);

  double scale = state_.delta;
  for (int halvings = 0; halvings < 64; ++halvings, scale *= 0.5) {
    Vec candidate = x + scale * direction;
    if (region_.quadratic_form(candidate) < 1.0) {
      state_.current = std::move(candidate);
      break;
    }
  }
  ++state_.iteration;
}

Trace interior_step_lp(const Vec& a, const Ellipsoid& region, double delta, int iterations) {
  if (iterations <= 0) throw UsageError("interior_step_lp: iterations must be positive");
  InteriorStep method(a, region, delta);
  Trace trace;
  trace.reserve(static_cast<std::size_t>(iterations) + 1);
  trace.push_back({0, a.dot(method.state().current)});
  for (int k = 1; k <= iterations; ++k) {
    method.step();
    trace.push_back({k, a.dot(method.state().current)});
  }
  return trace;
}

}  // namespace swarmqp
