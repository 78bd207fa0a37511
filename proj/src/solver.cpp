#include "swarmqp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmqp/errors.hpp"
#include "swarmqp/random.hpp"

namespace swarmqp {
namespace {

void notify(const SolveOptions& options, int index, const Swarm& s) {
  if (options.observer) options.observer(index, s);
}

std::optional<Vec> bias_for(const Ellipsoid& region, const SolveOptions& options) {
  if (options.start_near_centers) return region.center();
  return std::nullopt;
}

constexpr double kTangencyTolerance = 1e-9;

// K(s) = 1 - d^T (S1/(1-s) + S2/s)^{-1} d with S_i the inverse shape matrices
// and d the center offset. The ellipsoids are disjoint iff K(s) < 0 for some
// s in (0, 1); K is convex.
double separation(const Mat& s1, const Mat& s2, const Vec& d, double s) {
  const Mat m = s1 / (1.0 - s) + s2 / s;
  return 1.0 - d.dot(m.ldlt().solve(d));
}

}  // namespace

SolveResult solve_nearest_point(const NearestPointProblem& prob, const PsoConfig& cfg,
                                const SolveOptions& options) {
  cfg.validate();
  if (prob.target.size() != prob.region.dim()) {
    throw UsageError("solve_nearest_point: target dimension does not match region");
  }
  if (contains(prob.region, prob.target)) {
    throw UsageError("solve_nearest_point: target lies inside the region");
  }

  const Vec a = prob.target;
  const Objective f = [&a](const Vec& x) { return (a - x).norm(); };

  Rng rng(derive_seed(cfg.seed, 0));
  Swarm swarm = init_swarm(prob.region, cfg, bias_for(prob.region, options), rng);
  rebase_bests(swarm, f);

  SolveResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
  for (int t = 1; t <= cfg.max_iterations; ++t) {
    iterate_swarm(swarm, a, f, cfg, rng);
    notify(options, 0, swarm);
    result.trace.push_back({t, swarm.global_best_value});
  }
  result.best_x = swarm.global_best_position;
  result.objective_value = (a - result.best_x).norm();
  result.iterations_used = cfg.max_iterations;
  return result;
}

SolveResult solve_two_ellipsoids(const TwoEllipsoidProblem& prob, const PsoConfig& cfg,
                                 const SolveOptions& options) {
  cfg.validate();
  if (prob.region_x.dim() != prob.region_y.dim()) {
    throw UsageError("solve_two_ellipsoids: regions have different dimensions");
  }
  if (ellipsoids_intersect(prob.region_x, prob.region_y)) {
    throw UsageError("solve_two_ellipsoids: regions intersect; no positive shortest path");
  }

  Rng rng_x(derive_seed(cfg.seed, 0));
  Rng rng_y(derive_seed(cfg.seed, 1));
  Swarm sx = init_swarm(prob.region_x, cfg, bias_for(prob.region_x, options), rng_x);
  Swarm sy = init_swarm(prob.region_y, cfg, bias_for(prob.region_y, options), rng_y);

  {
    const Vec cx = prob.region_x.center();
    const Vec cy = prob.region_y.center();
    rebase_bests(sx, [&cy](const Vec& x) { return (x - cy).norm(); });
    rebase_bests(sy, [&cx](const Vec& y) { return (y - cx).norm(); });
  }

  Vec best_x = sx.global_best_position;
  Vec best_y = sy.global_best_position;
  double best = (best_x - best_y).norm();
  auto consider = [&](const Vec& x, const Vec& y) {
    const double d = (x - y).norm();
    if (d < best) {
      best = d;
      best_x = x;
      best_y = y;
    }
  };

  SolveResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
  for (int t = 1; t <= cfg.max_iterations; ++t) {
    const Vec target_x = sy.global_best_position;  // end point for the x swarm
    const Vec target_y = sx.global_best_position;
    const Objective fx = [&target_x](const Vec& x) { return (x - target_x).norm(); };
    const Objective fy = [&target_y](const Vec& y) { return (y - target_y).norm(); };

    rebase_bests(sx, fx);
    rebase_bests(sy, fy);
    iterate_swarm(sx, target_x, fx, cfg, rng_x);
    iterate_swarm(sy, target_y, fy, cfg, rng_y);
    notify(options, 0, sx);
    notify(options, 1, sy);

    consider(sx.global_best_position, sy.global_best_position);
    consider(sx.global_best_position, target_x);
    consider(target_y, sy.global_best_position);
    result.trace.push_back({t, best});
  }

  result.best_x = best_x;
  result.best_y = best_y;
  result.objective_value = best;
  result.iterations_used = cfg.max_iterations;
  return result;
}

Vec lp_optimum(const Vec& a, const Ellipsoid& region) {
  if (a.size() != region.dim()) throw UsageError("lp_optimum: dimension mismatch");
  if (a.norm() == 0.0) throw UsageError("lp_optimum: objective vector is zero");
  const Vec direction = region.shape().llt().solve(a);
  return region.center() + direction / std::sqrt(a.dot(direction));
}

SolveResult solve_lp_on_ellipsoid(const Vec& a, const Ellipsoid& region, const PsoConfig& cfg,
                                  LpAttractor attractor, const SolveOptions& options) {
  cfg.validate();
  if (a.size() != region.dim()) throw UsageError("solve_lp_on_ellipsoid: dimension mismatch");
  if (!a.allFinite() || a.norm() == 0.0) {
    throw UsageError("solve_lp_on_ellipsoid: objective vector must be nonzero and finite");
  }

  PsoConfig run_cfg = cfg;
  const Vec target = lp_optimum(a, region);
  if (attractor == LpAttractor::None) run_cfg.c3 = 0.0;
  const Objective f = [&a](const Vec& x) { return -a.dot(x); };

  Rng rng(derive_seed(cfg.seed, 0));
  Swarm swarm = init_swarm(region, run_cfg, bias_for(region, options), rng);
  rebase_bests(swarm, f);

  SolveResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
  for (int t = 1; t <= cfg.max_iterations; ++t) {
    iterate_swarm(swarm, target, f, run_cfg, rng);
    notify(options, 0, swarm);
    result.trace.push_back({t, -swarm.global_best_value});
  }
  result.best_x = swarm.global_best_position;
  result.objective_value = a.dot(result.best_x);
  result.iterations_used = cfg.max_iterations;
  return result;
}

bool ellipsoids_intersect(const Ellipsoid& e1, const Ellipsoid& e2) {
  if (e1.dim() != e2.dim()) throw UsageError("ellipsoids_intersect: dimension mismatch");
  if (contains(e1, e2.center()) || contains(e2, e1.center())) return true;

  const Mat s1 = spd_inverse(e1.shape());
  const Mat s2 = spd_inverse(e2.shape());
  const Vec d = e2.center() - e1.center();

  // Golden-section search for the minimum of the convex K on (0, 1).
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double m1 = hi - ratio * (hi - lo);
  double m2 = lo + ratio * (hi - lo);
  double k1 = separation(s1, s2, d, m1);
  double k2 = separation(s1, s2, d, m2);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    if (std::min(k1, k2) < -kTangencyTolerance) return false;
    if (k1 < k2) {
      hi = m2;
      m2 = m1;
      k2 = k1;
      m1 = hi - ratio * (hi - lo);
      k1 = separation(s1, s2, d, m1);
    } else {
      lo = m1;
      m1 = m2;
      k1 = k2;
      m2 = lo + ratio * (hi - lo);
      k2 = separation(s1, s2, d, m2);
    }
  }
  return std::min(k1, k2) >= -kTangencyTolerance;
}

}  // namespace swarmqp
