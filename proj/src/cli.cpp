#include "swarmqp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarmqp/baselines.hpp"
#include "swarmqp/classifier.hpp"
#include "swarmqp/cross_validation.hpp"
#include "swarmqp/dataset.hpp"
#include "swarmqp/errors.hpp"
#include "swarmqp/preprocessing.hpp"
#include "swarmqp/random.hpp"
#include "swarmqp/solver.hpp"

namespace swarmqp::cli {
namespace {

using nlohmann::json;

/// Center, then either a row-major shape matrix or a radius.
struct RegionFlags {
  std::vector<double> center;
  std::vector<double> shape;
  double radius = 1.0;

  Ellipsoid build(Eigen::Index dim, const std::string& what) const {
    const Vec c = center.empty() ? Vec(Vec::Zero(dim)) : Vec(Vec::Map(center.data(), static_cast<Eigen::Index>(center.size())));
    if (c.size() != dim) throw UsageError(what + ": center has " + std::to_string(c.size()) + " entries, expected " + std::to_string(dim));
    if (shape.empty()) {
      if (!(radius > 0.0)) throw UsageError(what + ": radius must be positive");
      return Ellipsoid::ball(c, radius);
    }
    if (static_cast<Eigen::Index>(shape.size()) != dim * dim) {
      throw UsageError(what + ": shape needs " + std::to_string(dim * dim) + " entries (row-major)");
    }
    Mat p(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) p(i, j) = shape[static_cast<std::size_t>(i * dim + j)];
    }
    return Ellipsoid(c, p);
  }
};

struct Options {
  PsoConfig pso;
  std::optional<int> iterations;
  std::string out;
  std::optional<std::string> format;

  bool csv(const char* fallback = "json") const { return format.value_or(fallback) == "csv"; }

  std::vector<double> a{1.0, 1.0};
  std::vector<double> target;
  RegionFlags region;
  RegionFlags region_x;
  RegionFlags region_y;
  int runs = 0;
  bool no_attractor = false;

  std::string dataset;
  std::string schema;
  int trials = 10;
  bool raw = false;

  int count = 100;
  std::string schema_out;
};

Vec to_vec(const std::vector<double>& v) { return Vec::Map(v.data(), static_cast<Eigen::Index>(v.size())); }

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json region_json(const Ellipsoid& e) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < e.dim(); ++i) rows.push_back(vec_json(e.shape().row(i).transpose()));
  return {{"center", vec_json(e.center())}, {"shape", rows}};
}

json trace_json(const Trace& t) {
  json out = json::array();
  for (const auto& p : t) out.push_back({{"iteration", p.iteration}, {"value", p.value}});
  return out;
}

std::string trace_csv(const Trace& t) {
  std::ostringstream s;
  s.precision(17);
  s << "iteration,value\n";
  for (const auto& p : t) s << p.iteration << ',' << p.value << '\n';
  return s.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_pso_flags(CLI::App* cmd, Options& o, int default_iterations) {
  cmd->add_option("--seed", o.pso.seed, "Master seed")->capture_default_str();
  cmd->add_option("--iterations", o.iterations,
                  "Iteration budget T (default " + std::to_string(default_iterations) + ")");
  cmd->add_option("--swarm-size", o.pso.swarm_size, "Particles per swarm")->capture_default_str();
  cmd->add_option("--w", o.pso.w, "Inertia weight")->capture_default_str();
  cmd->add_option("--c1", o.pso.c1, "Personal-best coefficient")->capture_default_str();
  cmd->add_option("--c2", o.pso.c2, "Global-best coefficient")->capture_default_str();
  cmd->add_option("--c3", o.pso.c3, "Attractor coefficient")->capture_default_str();
  cmd->add_option("--c4", o.pso.c4, "Craziness coefficient")->capture_default_str();
}

void add_io_flags(CLI::App* cmd, Options& o, const std::string& default_format) {
  cmd->add_option("--out", o.out, "Write output here instead of stdout");
  cmd->add_option("--format", o.format, "Output format: json or csv (default " + default_format + ")")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_region_flags(CLI::App* cmd, RegionFlags& r, const std::string& suffix) {
  cmd->add_option("--center" + suffix, r.center, "Ellipsoid center (comma separated)")->delimiter(',');
  cmd->add_option("--shape" + suffix, r.shape, "Ellipsoid matrix P, row-major (comma separated)")
      ->delimiter(',');
  cmd->add_option("--radius" + suffix, r.radius, "Ball radius when no shape is given")->capture_default_str();
}

PsoConfig resolved(const Options& o, int default_iterations) {
  PsoConfig cfg = o.pso;
  cfg.max_iterations = o.iterations.value_or(default_iterations);
  cfg.validate();
  return cfg;
}

json with_config(json body, const std::string& command, const PsoConfig& cfg, json extra = json::object()) {
  json config = to_json(cfg);
  for (auto it = extra.begin(); it != extra.end(); ++it) config[it.key()] = it.value();
  body["command"] = command;
  body["config"] = std::move(config);
  return body;
}

std::string cmd_solve_lp(const Options& o) {
  const PsoConfig cfg = resolved(o, 50);
  const Vec a = to_vec(o.a);
  const Ellipsoid region = o.region.build(a.size(), "solve-lp");
  const double optimum = a.dot(lp_optimum(a, region));
  const LpAttractor attractor = o.no_attractor ? LpAttractor::None : LpAttractor::AnalyticBoundary;
  json extra = region_json(region);
  extra["a"] = o.a;
  extra["attractor"] = o.no_attractor ? "none" : "analytic_boundary";

  if (o.runs > 0) {
    if (o.no_attractor) throw UsageError("--runs does not combine with --no-attractor");
    const LpStatistics st = run_lp_statistics(o.runs, cfg.c4, cfg, a, region);
    if (o.csv()) {
      std::ostringstream s;
      s.precision(17);
      s << "run,seed,error\n";
      for (std::size_t r = 0; r < st.errors.size(); ++r) {
        s << r << ',' << derive_seed(cfg.seed, r) << ',' << st.errors[r] << '\n';
      }
      return s.str();
    }
    extra["runs"] = o.runs;
    return dump(with_config({{"optimum", optimum},
                             {"errors", st.errors},
                             {"min", st.min},
                             {"mean", st.mean},
                             {"max", st.max},
                             {"stddev", st.stddev}},
                            "solve-lp", cfg, extra));
  }

  const SolveResult r = solve_lp_on_ellipsoid(a, region, cfg, attractor);
  if (o.csv()) return trace_csv(r.trace);
  return dump(with_config({{"best_x", vec_json(r.best_x)},
                           {"objective", r.objective_value},
                           {"optimum", optimum},
                           {"error", std::abs(r.objective_value - optimum)},
                           {"iterations_used", r.iterations_used},
                           {"trace", trace_json(r.trace)}},
                          "solve-lp", cfg, extra));
}

std::string cmd_solve_nearest(const Options& o) {
  const PsoConfig cfg = resolved(o, 200);
  if (o.target.empty()) throw UsageError("solve-nearest: --target is required");
  const Vec target = to_vec(o.target);
  const Ellipsoid region = o.region.build(target.size(), "solve-nearest");
  const SolveResult r = solve_nearest_point({region, target}, cfg);
  if (o.csv()) return trace_csv(r.trace);
  json extra = region_json(region);
  extra["target"] = o.target;
  return dump(with_config({{"best_x", vec_json(r.best_x)},
                           {"distance", r.objective_value},
                           {"iterations_used", r.iterations_used},
                           {"trace", trace_json(r.trace)}},
                          "solve-nearest", cfg, extra));
}

std::string cmd_solve_two(const Options& o) {
  const PsoConfig cfg = resolved(o, 200);
  Eigen::Index dim = 2;
  if (!o.region_x.center.empty()) dim = static_cast<Eigen::Index>(o.region_x.center.size());
  const Ellipsoid ex = o.region_x.build(dim, "solve-two (region 1)");
  const Ellipsoid ey = o.region_y.build(dim, "solve-two (region 2)");
  const SolveResult r = solve_two_ellipsoids({ex, ey}, cfg);
  if (o.csv()) return trace_csv(r.trace);
  return dump(with_config({{"best_x", vec_json(r.best_x)},
                           {"best_y", vec_json(*r.best_y)},
                           {"distance", r.objective_value},
                           {"iterations_used", r.iterations_used},
                           {"trace", trace_json(r.trace)}},
                          "solve-two", cfg, {{"region_1", region_json(ex)}, {"region_2", region_json(ey)}}));
}

std::string cmd_compare_baselines(const Options& o) {
  const PsoConfig cfg = resolved(o, 50);
  const Vec a = to_vec(o.a);
  const Ellipsoid region = o.region.build(a.size(), "compare-baselines");
  const int t = cfg.max_iterations;

  const Trace ellipsoid = ellipsoid_method_lp(a, region, t);
  const Trace d05 = interior_step_lp(a, region, 0.05, t);
  const Trace d50 = interior_step_lp(a, region, 0.50, t);
  PsoConfig low = cfg;
  low.c4 = 0.05;
  PsoConfig high = cfg;
  high.c4 = 0.20;
  const Trace pso_low = solve_lp_on_ellipsoid(a, region, low).trace;
  const Trace pso_high = solve_lp_on_ellipsoid(a, region, high).trace;

  // The swarm traces start at iteration 1, the deterministic ones at 0.
  auto pso_at = [](const Trace& tr, int k) { return tr[static_cast<std::size_t>(k - 1)].value; };

  if (o.csv("csv")) {
    std::ostringstream s;
    s.precision(17);
    s << "iteration,ellipsoid,karmarkar_d05,karmarkar_d50,pso_c4_005,pso_c4_020\n";
    for (int k = 0; k <= t; ++k) {
      const auto i = static_cast<std::size_t>(k);
      s << k << ',' << ellipsoid[i].value << ',' << d05[i].value << ',' << d50[i].value << ',';
      if (k == 0) {
        s << ",\n";
      } else {
        s << pso_at(pso_low, k) << ',' << pso_at(pso_high, k) << '\n';
      }
    }
    return s.str();
  }
  json rows = json::array();
  for (int k = 0; k <= t; ++k) {
    const auto i = static_cast<std::size_t>(k);
    json row = {{"iteration", k},
                {"ellipsoid", ellipsoid[i].value},
                {"karmarkar_d05", d05[i].value},
                {"karmarkar_d50", d50[i].value}};
    row["pso_c4_005"] = k == 0 ? json(nullptr) : json(pso_at(pso_low, k));
    row["pso_c4_020"] = k == 0 ? json(nullptr) : json(pso_at(pso_high, k));
    rows.push_back(row);
  }
  json extra = region_json(region);
  extra["a"] = o.a;
  return dump(with_config({{"optimum", a.dot(lp_optimum(a, region))}, {"series", rows}}, "compare-baselines",
                          cfg, extra));
}

Dataset load_dataset(const Options& o) {
  if (o.dataset.empty() || o.schema.empty()) throw UsageError("--dataset and --schema are required");
  const DatasetSchema schema = load_schema(o.schema);
  Dataset d = load_csv(o.dataset, schema);
  if (d.name.empty()) d.name = o.dataset;
  return d;
}

std::string cmd_train(const Options& o) {
  const PsoConfig cfg = resolved(o, 200);
  const Dataset d = load_dataset(o);
  TrainOptions options;
  if (!o.raw) {
    options.overlap = OverlapPolicy::Shrink;
    options.preprocess = whiten_and_project_pair;
  }
  const MulticlassModel model = multiclass_train(d, cfg, options);
  int wrong = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (model.predict(d.features.row(i).transpose()) != d.labels[static_cast<std::size_t>(i)]) ++wrong;
  }
  json body = to_json(model);
  body["training_error_percent"] = 100.0 * wrong / static_cast<double>(d.size());
  return dump(with_config(body, "train", cfg,
                          {{"dataset", o.dataset},
                           {"schema", o.schema},
                           {"preprocessing", o.raw ? "none" : "pair_whitening_2d_projection"},
                           {"overlap", o.raw ? "reject" : "shrink"}}));
}

std::string cmd_cross_validate(const Options& o) {
  const PsoConfig cfg = resolved(o, 200);
  const Dataset d = load_dataset(o);
  const CvReport report = cross_validate(d, cfg, o.trials);
  if (o.csv()) return fold_csv(report);
  json body = to_json(report);
  body["config"]["dataset"] = o.dataset;
  body["config"]["schema"] = o.schema;
  body["command"] = "cross-validate";
  return dump(body);
}

std::string cmd_synth(const Options& o) {
  const Dataset d = generate_synthetic(o.count, o.pso.seed);
  if (!o.schema_out.empty()) {
    std::ofstream s(o.schema_out);
    if (!s) throw UsageError("cannot write " + o.schema_out);
    s << json{{"name", d.name}, {"header", true}, {"attributes", 2}, {"label_column", 2}, {"labels", d.class_names}}
             .dump(2)
      << '\n';
  }
  std::ostringstream out;
  out.precision(17);
  out << "x1,x2,label\n";
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    out << d.features(i, 0) << ',' << d.features(i, 1) << ',' << d.class_names[static_cast<std::size_t>(d.labels[static_cast<std::size_t>(i)])] << '\n';
  }
  return out.str();
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

}  // namespace

LpStatistics run_lp_statistics(int runs, double c4, const PsoConfig& cfg, const Vec& a, const Ellipsoid& region) {
  if (runs < 1) throw UsageError("run_lp_statistics: runs must be at least 1");
  const double optimum = a.dot(lp_optimum(a, region));
  LpStatistics st;
  for (int r = 0; r < runs; ++r) {
    PsoConfig run_cfg = cfg;
    run_cfg.c4 = c4;
    run_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
    st.errors.push_back(std::abs(solve_lp_on_ellipsoid(a, region, run_cfg).objective_value - optimum));
  }
  st.min = *std::min_element(st.errors.begin(), st.errors.end());
  st.max = *std::max_element(st.errors.begin(), st.errors.end());
  double sum = 0.0;
  for (const double e : st.errors) sum += e;
  st.mean = sum / runs;
  if (runs > 1) {
    double sq = 0.0;
    for (const double e : st.errors) sq += (e - st.mean) * (e - st.mean);
    st.stddev = std::sqrt(sq / (runs - 1));
  }
  return st;
}

LpStatistics run_lp_statistics(int runs, double c4, const PsoConfig& cfg) {
  return run_lp_statistics(runs, c4, cfg, Vec::Ones(2), Ellipsoid::ball(Vec::Zero(2), 1.0));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle swarm solver for quadratically constrained problems and ellipsoid-margin classifiers",
               "swarmqp"};
  app.require_subcommand(1);
  Options o;

  auto* lp = app.add_subcommand("solve-lp", "Maximize a^T x over an ellipsoid");
  add_pso_flags(lp, o, 50);
  add_io_flags(lp, o, "json");
  lp->add_option("--a", o.a, "Objective vector (comma separated)")->delimiter(',')->capture_default_str();
  add_region_flags(lp, o.region, "");
  lp->add_option("--runs", o.runs, "Repeat with derived seeds and report error statistics");
  lp->add_flag("--no-attractor", o.no_attractor, "Drop the attractor term");

  auto* nearest = app.add_subcommand("solve-nearest", "Closest point of an ellipsoid to a target");
  add_pso_flags(nearest, o, 200);
  add_io_flags(nearest, o, "json");
  nearest->add_option("--target", o.target, "Target point (comma separated)")->delimiter(',');
  add_region_flags(nearest, o.region, "");

  auto* two = app.add_subcommand("solve-two", "Closest points of two disjoint ellipsoids");
  add_pso_flags(two, o, 200);
  add_io_flags(two, o, "json");
  add_region_flags(two, o.region_x, "1");
  add_region_flags(two, o.region_y, "2");

  auto* compare = app.add_subcommand("compare-baselines", "Per-iteration objective of every linear solver");
  add_pso_flags(compare, o, 50);
  add_io_flags(compare, o, "csv");
  compare->add_option("--a", o.a, "Objective vector (comma separated)")->delimiter(',')->capture_default_str();
  add_region_flags(compare, o.region, "");

  auto* train = app.add_subcommand("train", "Fit one-vs-one hyperplanes on a dataset");
  add_pso_flags(train, o, 200);
  add_io_flags(train, o, "json");
  train->add_option("--dataset", o.dataset, "CSV file")->required();
  train->add_option("--schema", o.schema, "Schema JSON file")->required();
  train->add_flag("--raw", o.raw, "Train on raw features and reject intersecting classes");

  auto* cv = app.add_subcommand("cross-validate", "Stratified 10-fold cross-validation");
  add_pso_flags(cv, o, 200);
  add_io_flags(cv, o, "json");
  cv->add_option("--dataset", o.dataset, "CSV file")->required();
  cv->add_option("--schema", o.schema, "Schema JSON file")->required();
  cv->add_option("--trials", o.trials, "Number of trials")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Two-class Gaussian sample as CSV");
  synth->add_option("--seed", o.pso.seed, "Seed")->capture_default_str();
  synth->add_option("--count", o.count, "Samples per class")->capture_default_str();
  synth->add_option("--out", o.out, "Write CSV here instead of stdout");
  synth->add_option("--schema-out", o.schema_out, "Also write a matching schema file");

  std::vector<const char*> argv;
  argv.push_back("swarmqp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    std::string text;
    if (lp->parsed()) text = cmd_solve_lp(o);
    else if (nearest->parsed()) text = cmd_solve_nearest(o);
    else if (two->parsed()) text = cmd_solve_two(o);
    else if (compare->parsed()) text = cmd_compare_baselines(o);
    else if (train->parsed()) text = cmd_train(o);
    else if (cv->parsed()) text = cmd_cross_validate(o);
    else text = cmd_synth(o);
    emit(text, o, out);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IngestionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace swarmqp::cli
