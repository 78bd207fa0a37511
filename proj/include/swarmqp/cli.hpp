#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "swarmqp/geometry.hpp"
#include "swarmqp/pso.hpp"

namespace swarmqp::cli {

/// Statistics of |f_best - f*| over independent linear-objective solves.
struct LpStatistics {
  std::vector<double> errors;  ///< by run index
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double stddev = 0.0;  ///< sample standard deviation, 0 for one run
};

/// Run r uses seed derive_seed(cfg.seed, r) and cfg.c4 replaced by c4.
LpStatistics run_lp_statistics(int runs, double c4, const PsoConfig& cfg, const Vec& a,
                               const Ellipsoid& region);

/// maximize x1 + x2 over the unit disc (optimum sqrt 2).
LpStatistics run_lp_statistics(int runs, double c4, const PsoConfig& cfg);

/// Exit codes: 0 success, 1 usage or input error, 2 numeric or degenerate data.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmqp::cli
