#include "swarmqp/pso.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "swarmqp/errors.hpp"

namespace swarmqp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBiasRadius = 0.1;
constexpr int kMaxBiasAttempts = 10000;

double checked(const Objective& f, const Vec& x, std::size_t index) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericError("objective is not finite at particle " + std::to_string(index));
  }
  return v;
}

}  // namespace

void PsoConfig::validate() const {
  for (const double c : {w, c1, c2, c3, c4}) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw UsageError("pso: coefficients must be finite and nonnegative");
  }
  if (swarm_size < 1) throw UsageError("pso: swarm size must be at least 1");
  if (max_iterations < 1) throw UsageError("pso: iteration budget must be at least 1");
}

nlohmann::json to_json(const PsoConfig& cfg) {
  return {{"w", cfg.w},
          {"c1", cfg.c1},
          {"c2", cfg.c2},
          {"c3", cfg.c3},
          {"c4", cfg.c4},
          {"swarm_size", cfg.swarm_size},
          {"iterations", cfg.max_iterations},
          {"seed", cfg.seed}};
}

VelocityDraws draw_velocity_terms(Eigen::Index dim, Rng& rng) {
  VelocityDraws d;
  d.r1 = rng.uniform01();
  d.r2 = rng.uniform01();
  d.r3 = rng.uniform01();
  const Vec dir = unit_sphere_point(dim, rng);
  d.r4 = rng.uniform01() * dir;
  return d;
}

Vec velocity_update(const Particle& p, const Vec& global_best, const Vec& attractor,
                    const PsoConfig& cfg, const VelocityDraws& draws) {
  const auto n = p.position.size();
  if (p.velocity.size() != n || p.best_position.size() != n || global_best.size() != n ||
      attractor.size() != n || draws.r4.size() != n) {
    throw UsageError("velocity_update: dimension mismatch");
  }
  const Vec& x = p.position;
  return cfg.w * p.velocity + cfg.c1 * draws.r1 * (p.best_position - x) +
         cfg.c2 * draws.r2 * (global_best - x) + cfg.c3 * draws.r3 * (attractor - x) +
         cfg.c4 * draws.r4;
}

Vec velocity_update(const Particle& p, const Vec& global_best, const Vec& attractor,
                    const PsoConfig& cfg, Rng& rng) {
  return velocity_update(p, global_best, attractor, cfg, draw_velocity_terms(p.position.size(), rng));
}

Particle position_update_with_repair(Particle p, const Vec& new_velocity, const Ellipsoid& region) {
  Vec candidate = p.position + new_velocity;
  if (contains(region, candidate)) p.position = std::move(candidate);
  p.velocity = new_velocity;
  return p;
}

void evaluate_and_update_bests(Swarm& s, const Objective& objective) {
  if (s.particles.empty()) throw UsageError("evaluate_and_update_bests: empty swarm");
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    Particle& p = s.particles[i];
    const double value = checked(objective, p.position, i);
    if (value < p.best_value) {
      p.best_value = value;
      p.best_position = p.position;
    }
  }
  for (const Particle& p : s.particles) {
    if (p.best_value < s.global_best_value) {
      s.global_best_value = p.best_value;
      s.global_best_position = p.best_position;
    }
  }
}

void rebase_bests(Swarm& s, const Objective& objective) {
  if (s.particles.empty()) throw UsageError("rebase_bests: empty swarm");
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    s.particles[i].best_value = checked(objective, s.particles[i].best_position, i);
  }
  // The incumbent is one of the personal bests; ties keep it.
  s.global_best_value = objective(s.global_best_position);
  if (!std::isfinite(s.global_best_value)) s.global_best_value = kInf;
  for (const Particle& p : s.particles) {
    if (p.best_value < s.global_best_value) {
      s.global_best_value = p.best_value;
      s.global_best_position = p.best_position;
    }
  }
}

Swarm init_swarm(const Ellipsoid& region, const PsoConfig& cfg, const std::optional<Vec>& center_bias,
                 Rng& rng) {
  cfg.validate();
  const auto n = region.dim();
  if (center_bias && !contains(region, *center_bias)) {
    throw UsageError("init_swarm: center bias lies outside the region");
  }

  Swarm s{{}, region, Vec::Zero(n), kInf, 0};
  s.particles.reserve(static_cast<std::size_t>(cfg.swarm_size));
  for (int i = 0; i < cfg.swarm_size; ++i) {
    Vec x;
    if (center_bias) {
      x = *center_bias;
      for (int attempt = 0; attempt < kMaxBiasAttempts; ++attempt) {
        Vec candidate = *center_bias + kBiasRadius * region.ball_map() * unit_ball_point(n, rng);
        if (contains(region, candidate)) {
          x = std::move(candidate);
          break;
        }
      }
    } else {
      do {
        x = region.center() + region.ball_map() * unit_ball_point(n, rng);
      } while (!contains(region, x));
    }
    s.particles.push_back(Particle{x, Vec::Zero(n), x, kInf});
  }
  s.global_best_position = s.particles.front().position;
  return s;
}

void iterate_swarm(Swarm& s, const Vec& attractor, const Objective& objective, const PsoConfig& cfg,
                   Rng& rng) {
  const Vec global_best = s.global_best_position;
  for (Particle& p : s.particles) {
    const Vec v = velocity_update(p, global_best, attractor, cfg, rng);
    p = position_update_with_repair(std::move(p), v, s.region);
  }
  evaluate_and_update_bests(s, objective);
  ++s.iteration;
}

}  // namespace swarmqp
