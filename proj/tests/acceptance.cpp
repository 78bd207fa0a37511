// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 only when
// every criterion passes; 77 when the requested dataset is not available.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swarmqp/baselines.hpp"
#include "swarmqp/classifier.hpp"
#include "swarmqp/cli.hpp"
#include "swarmqp/cross_validation.hpp"
#include "swarmqp/dataset.hpp"
#include "swarmqp/errors.hpp"
#include "swarmqp/solver.hpp"

using namespace swarmqp;

namespace {

constexpr int kSkip = 77;

struct Invariants {
  long constraint_checks = 0;
  long constraint_violations = 0;
  long monotone_checks = 0;
  long monotone_violations = 0;
};

Invariants g_invariants;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int g_failures = 0;

void report(bool pass, const std::string& id, const std::string& detail) {
  if (!pass) ++g_failures;
  std::cout << (pass ? "PASS " : "FAIL ") << id << "  " << detail << std::endl;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Observer recording feasibility of every particle and, when the objective is
// fixed, monotonicity of the swarm's global best.
SolveOptions observed(bool fixed_objective, bool near_centers = false) {
  SolveOptions options;
  options.start_near_centers = near_centers;
  auto last = std::make_shared<std::vector<double>>(2, std::numeric_limits<double>::infinity());
  options.observer = [last, fixed_objective](int index, const Swarm& s) {
    for (const auto& p : s.particles) {
      ++g_invariants.constraint_checks;
      if (!contains(s.region, p.position)) ++g_invariants.constraint_violations;
    }
    if (fixed_objective) {
      ++g_invariants.monotone_checks;
      if (s.global_best_value > (*last)[static_cast<std::size_t>(index)]) ++g_invariants.monotone_violations;
      (*last)[static_cast<std::size_t>(index)] = s.global_best_value;
    }
  };
  return options;
}

void check_trace_monotone(const Trace& t, bool increasing) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    ++g_invariants.monotone_checks;
    const bool ok = increasing ? t[i].value >= t[i - 1].value : t[i].value <= t[i - 1].value;
    if (!ok) ++g_invariants.monotone_violations;
  }
}

PsoConfig lp_config(std::uint64_t seed) {
  PsoConfig cfg;
  cfg.max_iterations = 50;
  cfg.seed = seed;
  return cfg;
}

const Ellipsoid kUnitDisc = Ellipsoid::ball(v2(0, 0), 1.0);

void ac1_lp_convergence() {
  Stopwatch clock;
  const auto st = cli::run_lp_statistics(50, 0.20, lp_config(0));
  const double elapsed = clock.seconds();

  // Same seeds again, observed, for the invariant suite.
  for (int r = 0; r < 50; ++r) {
    PsoConfig cfg = lp_config(derive_seed(0, static_cast<std::uint64_t>(r)));
    const auto res = solve_lp_on_ellipsoid(v2(1, 1), kUnitDisc, cfg, LpAttractor::AnalyticBoundary, observed(true));
    check_trace_monotone(res.trace, true);
  }

  const bool pass = st.min <= 0.005 && st.mean <= 0.05 && st.max <= 0.20 && elapsed < 5.0;
  report(pass, "AC1 LP convergence",
         fmt("|f-1.4142| over 50 runs, T=50: min=%.4g mean=%.4g max=%.4g sd=%.4g, %.2fs "
             "(need min<=0.005 mean<=0.05 max<=0.20, <5s)",
             st.min, st.mean, st.max, st.stddev, elapsed));
}

void ac2_c4_ordering() {
  int wins = 0;
  std::ostringstream means;
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    const PsoConfig cfg = lp_config(derive_seed(2, rep));
    const double high = cli::run_lp_statistics(50, 0.20, cfg).mean;
    const double low = cli::run_lp_statistics(50, 0.05, cfg).mean;
    if (high <= low) ++wins;
    means << (rep ? " " : "") << fmt("%.4f/%.4f", high, low);
  }
  report(wins >= 8, "AC2 c4 ordering",
         fmt("mean error c4=0.20 <= c4=0.05 in %d/10 repetitions (need >=8); means 0.20/0.05: ", wins) + means.str());
}

void ac3_baselines() {
  Stopwatch clock;
  const double root2 = std::sqrt(2.0);
  const double e = std::abs(ellipsoid_method_lp(v2(1, 1), kUnitDisc, 25)[25].value - root2);
  const double d50 = std::abs(interior_step_lp(v2(1, 1), kUnitDisc, 0.50, 25)[25].value - root2);
  const double d05 = std::abs(interior_step_lp(v2(1, 1), kUnitDisc, 0.05, 25)[25].value - root2);
  const double again = std::abs(ellipsoid_method_lp(v2(1, 1), kUnitDisc, 25)[25].value - root2);
  const double elapsed = clock.seconds();
  const bool pass = e < d50 && d50 < d05 && e <= 1e-3 && again == e && elapsed < 1.0;
  report(pass, "AC3 baseline ordering",
         fmt("errors at iteration 25: ellipsoid=%.3g < interior(0.50)=%.3g < interior(0.05)=%.3g, %.3fs "
             "(need ellipsoid<=0.001, deterministic, <1s)",
             e, d50, d05, elapsed));
}

void ac4_two_ellipsoid_oracle() {
  Stopwatch clock;
  Rng rng(4);
  int hits = 0;
  int cases = 0;
  double worst = 0.0;
  while (cases < 20) {
    auto random_spd = [&] {
      Eigen::Matrix2d a;
      a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
      return Eigen::Matrix2d(a * a.transpose() + 0.3 * Eigen::Matrix2d::Identity());
    };
    const Eigen::Matrix2d p1 = random_spd();
    const Eigen::Matrix2d p2 = random_spd();
    const Eigen::Vector2d c1(3 * rng.normal(), 3 * rng.normal());
    const Eigen::Vector2d c2(3 * rng.normal(), 3 * rng.normal());
    if (oracle::ellipses_overlap_by_grid(c1, p1, c2, p2)) continue;
    const Ellipsoid e1(c1, p1);
    const Ellipsoid e2(c2, p2);
    if (ellipsoids_intersect(e1, e2)) continue;

    const double brute = oracle::min_distance_between(oracle::ellipse_boundary(c1, p1, 4000),
                                                      oracle::ellipse_boundary(c2, p2, 4000));
    PsoConfig cfg;
    cfg.max_iterations = 500;
    cfg.seed = static_cast<std::uint64_t>(cases);
    const auto r = solve_two_ellipsoids({e1, e2}, cfg, observed(false));
    check_trace_monotone(r.trace, false);
    const double rel = std::abs(r.objective_value - brute) / brute;
    worst = std::max(worst, rel);
    if (rel <= 1e-2) ++hits;
    ++cases;
  }
  const double elapsed = clock.seconds();
  report(hits >= 18 && elapsed < 30.0, "AC4 two-ellipsoid oracle",
         fmt("%d/20 pairs within 1e-2 relative of 4000x4000 boundary enumeration (need >=18), worst %.3g, %.1fs (<30s)",
             hits, worst, elapsed));
}

void ac5_synthetic() {
  int hits = 0;
  std::ostringstream weights;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset d = generate_synthetic(10000, seed);
    PsoConfig cfg;
    cfg.seed = seed;
    const Mat a = d.class_samples(0);
    const Mat b = d.class_samples(1);
    Hyperplane h;
    try {
      h = normalize_weights(fit_hyperplane(a, b, cfg, {"class_1", "class_2"}).hyperplane);
    } catch (const SeparabilityError& e) {
      weights << " [" << e.what() << "]";
      continue;
    }
    // Same solve again, observed, for the invariant suite.
    const ClassModel m1 = fit_class_model(a, b);
    const ClassModel m2 = fit_class_model(b, a);
    const auto r = solve_two_ellipsoids({m1.ellipsoid, m2.ellipsoid}, cfg, observed(false, true));
    check_trace_monotone(r.trace, false);

    const double s = h.w(0) >= 0 ? 1.0 : -1.0;
    const bool ok = std::abs(s * h.w(0) - 0.6875) <= 0.05 && std::abs(s * h.w(1) + 0.7260) <= 0.05;
    if (ok) ++hits;
    weights << fmt(" (%.4f,%.4f)", s * h.w(0), s * h.w(1));
  }
  report(hits >= 8, "AC5 synthetic hyperplane",
         fmt("%d/10 seeds with normalized w within 0.05 of (0.6875,-0.7260) (need >=8):", hits) + weights.str());
}

bool ac6_dataset(const std::string& dir, const std::string& name, double band, bool optional) {
  const std::string csv = dir + "/" + name + ".csv";
  const std::string id = "AC6 cross-validation " + name;
  if (!std::filesystem::exists(csv)) {
    if (optional) {
      std::cout << "SKIP " << id << "  " << csv << " not present" << std::endl;
      return false;
    }
    report(false, id, csv + " not present");
    return true;
  }
  Stopwatch clock;
  const Dataset d = load_csv(csv, load_schema(dir + "/" + name + ".schema"));
  const CvReport r = cross_validate(d, PsoConfig{}, 10);
  const double elapsed = clock.seconds();
  report(r.mean_error_percent <= band && elapsed < 60.0, id,
         fmt("mean 10-trial 10-fold error %.2f%% (sd %.2f) (need <=%.0f%%), %.1fs (<60s)", r.mean_error_percent,
             r.stddev_error_percent, band, elapsed));
  return true;
}

void ac7c_classifier_invariants() {
  Rng rng(7);
  int problems = 0;
  int violations = 0;
  int attempts = 0;
  int short_of_boundary_default = 0;
  int boundary_violations = 0;
  double lowest_q = 1.0;
  while (problems < 100 && attempts < 1000) {
    ++attempts;
    const Vec c1 = v2(5 * rng.normal(), 5 * rng.normal());
    const Vec c2 = c1 + (6 + 6 * rng.uniform01()) * unit_sphere_point(2, rng);
    auto cloud = [&](const Vec& c) {
      Eigen::Matrix2d l;
      l << 0.5 + rng.uniform01(), 0, rng.normal() * 0.5, 0.5 + rng.uniform01();
      Mat out(100, 2);
      for (int i = 0; i < 100; ++i) out.row(i) = (c + l * Eigen::Vector2d(rng.normal(), rng.normal())).transpose();
      return out;
    };
    const Mat a = cloud(c1);
    const Mat b = cloud(c2);
    const ClassModel m1 = fit_class_model(a, b);
    const ClassModel m2 = fit_class_model(b, a);
    if (ellipsoids_intersect(m1.ellipsoid, m2.ellipsoid)) continue;
    ++problems;

    PsoConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(attempts);
    const PairwiseClassifier pc = fit_hyperplane(a, b, cfg, {"a", "b"});
    const Vec mid = pc.midpoint();
    if (std::abs((pc.x_b - mid).norm() - (pc.y_b - mid).norm()) > 1e-9) ++violations;
    if (std::abs(pc.hyperplane.decision(mid)) > 1e-9) ++violations;
    if (pc.hyperplane.decision(m1.mean) < 0.0) ++violations;
    if (!(pc.hyperplane.decision(m2.mean) < 0.0)) ++violations;
    PairwiseClassifier unit = pc;
    unit.hyperplane = normalize_weights(pc.hyperplane);
    for (int t = 0; t < 100; ++t) {
      const Vec x = c1 + 10 * v2(rng.normal(), rng.normal());
      if (classify(pc, x) != classify(unit, x)) ++violations;
    }
    if (m1.ellipsoid.quadratic_form(pc.x_b) < 1.0 - 1e-2 || m2.ellipsoid.quadratic_form(pc.y_b) < 1.0 - 1e-2) {
      ++short_of_boundary_default;
    }

    // Boundary points are the converged constrained optima; checked with the
    // longer budget also used for the two-ellipsoid oracle comparison.
    PsoConfig long_cfg = cfg;
    long_cfg.max_iterations = 500;
    const PairwiseClassifier converged = fit_hyperplane(a, b, long_cfg, {"a", "b"});
    const double q1 = m1.ellipsoid.quadratic_form(converged.x_b);
    const double q2 = m2.ellipsoid.quadratic_form(converged.y_b);
    lowest_q = std::min({lowest_q, q1, q2});
    if (q1 > 1.0 || q2 > 1.0 || q1 < 1.0 - 1e-2 || q2 < 1.0 - 1e-2) ++boundary_violations;
  }
  report(problems == 100 && violations == 0, "AC7c classifier invariants",
         fmt("%d separable problems at default settings, %d bisector/orientation/normalization violations",
             problems, violations));
  report(problems == 100 && boundary_violations == 0, "AC7c boundary points",
         fmt("T=500: %d/%d pairs outside 1 - 1e-2 <= q <= 1 (lowest q %.4f); at T=200, %d pairs still short of 1 - 1e-2",
             boundary_violations, problems, lowest_q, short_of_boundary_default));
}

void ac7d_determinism(const std::string& dir) {
  const std::vector<std::vector<std::string>> commands = {
      {"solve-lp", "--seed", "5"},
      {"solve-lp", "--runs", "10", "--seed", "5"},
      {"solve-nearest", "--target", "3,1", "--seed", "5"},
      {"solve-two", "--center2", "5,0", "--seed", "5"},
      {"compare-baselines", "--seed", "5"},
      {"train", "--dataset", dir + "/iris.csv", "--schema", dir + "/iris.schema", "--seed", "5"},
      {"cross-validate", "--dataset", dir + "/wine.csv", "--schema", dir + "/wine.schema", "--trials", "2"},
      {"synth", "--count", "50", "--seed", "5"},
  };
  int identical = 0;
  for (const auto& args : commands) {
    std::ostringstream o1, e1, o2, e2;
    const int c1 = cli::run(args, o1, e1);
    const int c2 = cli::run(args, o2, e2);
    if (c1 == 0 && c2 == 0 && o1.str() == o2.str() && !o1.str().empty()) ++identical;
  }
  const int total = static_cast<int>(commands.size());
  report(identical == total, "AC7d seed determinism",
         fmt("%d/%d commands byte-identical across repeated runs", identical, total));
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = SWARMQP_DATA_DIR;
  bool thyroid_only = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--thyroid") {
      thyroid_only = true;
    } else if (arg == "--data" && i + 1 < argc) {
      dir = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--data DIR] [--thyroid]\n";
      return 1;
    }
  }

  try {
    if (thyroid_only) {
      if (!ac6_dataset(dir, "thyroid", 10.0, true)) return kSkip;
      return g_failures == 0 ? 0 : 1;
    }
    ac1_lp_convergence();
    ac2_c4_ordering();
    ac3_baselines();
    ac4_two_ellipsoid_oracle();
    ac5_synthetic();
    ac6_dataset(dir, "iris", 5.0, false);
    ac6_dataset(dir, "wine", 4.0, false);
    ac6_dataset(dir, "pima", 32.0, false);

    report(g_invariants.constraint_violations == 0, "AC7a constraint satisfaction",
           fmt("%ld particle positions checked across AC1/AC4/AC5 solves, %ld outside their region",
               g_invariants.constraint_checks, g_invariants.constraint_violations));
    report(g_invariants.monotone_violations == 0, "AC7b global-best monotonicity",
           fmt("%ld consecutive global-best/trace pairs checked, %ld regressions", g_invariants.monotone_checks,
               g_invariants.monotone_violations));
    ac7c_classifier_invariants();
    ac7d_determinism(dir);
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted  " << e.what() << std::endl;
    return 1;
  }

  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
