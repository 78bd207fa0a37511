#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "swarmqp/geometry.hpp"
#include "swarmqp/pso.hpp"

namespace swarmqp {

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
};
using Trace = std::vector<TracePoint>;

/// minimize |a - x| subject to x in region; a must lie outside the region.
struct NearestPointProblem {
  Ellipsoid region;
  Vec target;
};

/// minimize |x - y| with x, y in two non-intersecting ellipsoids.
struct TwoEllipsoidProblem {
  Ellipsoid region_x;
  Ellipsoid region_y;
};

struct SolveResult {
  Vec best_x;
  std::optional<Vec> best_y;
  double objective_value = 0.0;
  Trace trace;  ///< one record per iteration, value after the best update
  int iterations_used = 0;
};

/// Invoked after every completed iteration; swarm_index is 0 for the x swarm
/// and 1 for the y swarm.
using SwarmObserver = std::function<void(int swarm_index, const Swarm&)>;

struct SolveOptions {
  /// Start particles within 0.1 (ellipsoid metric) of each region's center
  /// instead of uniformly over the region.
  bool start_near_centers = false;
  SwarmObserver observer;
};

/// How the attractor term is used in the linear objective solve.
enum class LpAttractor {
  AnalyticBoundary,  ///< attract towards the exact boundary maximizer
  None,              ///< drop the attractor term (c3 treated as 0)
};

SolveResult solve_nearest_point(const NearestPointProblem& prob, const PsoConfig& cfg,
                                const SolveOptions& options = {});

/// Two swarms updated simultaneously: each one is attracted to, and scored
/// against, the other swarm's previous-iteration global best. The reported
/// pair and the trace track the closest pair seen so far.
SolveResult solve_two_ellipsoids(const TwoEllipsoidProblem& prob, const PsoConfig& cfg,
                                 const SolveOptions& options = {});

/// maximize a^T x over the region. The trace records a^T x of the global best.
SolveResult solve_lp_on_ellipsoid(const Vec& a, const Ellipsoid& region, const PsoConfig& cfg,
                                  LpAttractor attractor = LpAttractor::AnalyticBoundary,
                                  const SolveOptions& options = {});

/// center + P^{-1} a / sqrt(a^T P^{-1} a): the maximizer of a^T x.
Vec lp_optimum(const Vec& a, const Ellipsoid& region);

/// True when the two ellipsoids share at least one point. Tangency counts as
/// intersecting.
bool ellipsoids_intersect(const Ellipsoid& e1, const Ellipsoid& e2);

}  // namespace swarmqp
