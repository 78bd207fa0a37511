#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "swarmqp/geometry.hpp"
#include "swarmqp/random.hpp"

namespace swarmqp {

/// Swarm hyperparameters. Defaults are the published settings
/// (w = c1 = c2 = c3 = 0.05, c4 = 0.20, ten particles).
struct PsoConfig {
  double w = 0.05;   ///< inertia
  double c1 = 0.05;  ///< personal-best attraction
  double c2 = 0.05;  ///< global-best attraction
  double c3 = 0.05;  ///< attractor (known end point) term
  double c4 = 0.20;  ///< craziness
  int swarm_size = 10;
  int max_iterations = 200;
  std::uint64_t seed = 0;

  /// Throws UsageError for negative coefficients or non-positive sizes.
  void validate() const;
};

/// Keys w, c1, c2, c3, c4, swarm_size, iterations, seed.
nlohmann::json to_json(const PsoConfig& cfg);

struct Particle {
  Vec position;
  Vec velocity;
  Vec best_position;
  double best_value = 0.0;
};

/// A population confined to one ellipsoid. Minimization convention.
struct Swarm {
  std::vector<Particle> particles;
  Ellipsoid region;
  Vec global_best_position;
  double global_best_value = 0.0;
  int iteration = 0;
};

using Objective = std::function<double(const Vec&)>;

/// The random quantities consumed by one velocity update.
struct VelocityDraws {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  Vec r4;  ///< point on a sphere of radius uniform in [0, 1]
};

VelocityDraws draw_velocity_terms(Eigen::Index dim, Rng& rng);

/// w v + c1 r1 (x_bi - x) + c2 r2 (x_bg - x) + c3 r3 (a - x) + c4 r4
Vec velocity_update(const Particle& p, const Vec& global_best, const Vec& attractor,
                    const PsoConfig& cfg, const VelocityDraws& draws);

Vec velocity_update(const Particle& p, const Vec& global_best, const Vec& attractor,
                    const PsoConfig& cfg, Rng& rng);

/// Moves the particle by new_velocity unless that leaves the region, in which
/// case the position is kept. The velocity is stored either way.
Particle position_update_with_repair(Particle p, const Vec& new_velocity, const Ellipsoid& region);

/// Scores current positions, replaces personal bests on strict improvement and
/// refreshes the global best (ties keep the incumbent). Throws NumericError
/// naming the particle when the objective is not finite.
void evaluate_and_update_bests(Swarm& s, const Objective& objective);

/// Re-scores personal bests after the objective changed (moving target) and
/// recomputes the global best from them.
void rebase_bests(Swarm& s, const Objective& objective);

/// k particles inside the region with zero velocity. Without a bias the
/// positions are uniform over the ellipsoid; with one they are drawn within
/// radius 0.1 (ellipsoid metric) of it. Best values are +inf until the first
/// call to rebase_bests / evaluate_and_update_bests.
Swarm init_swarm(const Ellipsoid& region, const PsoConfig& cfg, const std::optional<Vec>& center_bias,
                 Rng& rng);

/// One pass of the loop: velocity and repaired position update for every
/// particle in order, then evaluation and best update.
void iterate_swarm(Swarm& s, const Vec& attractor, const Objective& objective, const PsoConfig& cfg,
                   Rng& rng);

}  // namespace swarmqp
