#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmqp/classifier.hpp"
#include "swarmqp/dataset.hpp"
#include "swarmqp/pso.hpp"

namespace swarmqp {

inline constexpr int kFolds = 10;

/// fold_of[i] in [0, kFolds) for sample i.
struct FoldPlan {
  std::vector<int> fold_of;
  std::uint64_t trial_seed = 0;
};

/// Stratified: each class is shuffled with trial_seed and dealt round-robin,
/// so per-class fold sizes differ by at most one. Throws UsageError when a
/// class has fewer than kFolds samples.
FoldPlan make_fold_plan(const Dataset& d, std::uint64_t trial_seed);

struct TrialResult {
  std::uint64_t trial_seed = 0;
  std::vector<int> fold_errors;  ///< misclassified count per fold
  std::vector<int> fold_sizes;
  double error_percent = 0.0;
};

struct CvReport {
  std::string dataset;
  PsoConfig config;
  std::vector<TrialResult> trials;
  double mean_error_percent = 0.0;
  double stddev_error_percent = 0.0;  ///< sample standard deviation, 0 for one trial
};

/// Each trial: stratified folds; per fold and class pair, whitening and 2-D
/// projection fitted on the training folds, hyperplanes trained with
/// OverlapPolicy::Shrink, held-out fold classified by one-vs-one vote.
/// Trial t uses fold seed derive_seed(cfg.seed, t) and fold f trains with
/// seed derive_seed(fold seed, f + 1). Rows are put in canonical order
/// first, so the result does not depend on input order.
CvReport cross_validate(const Dataset& d, const PsoConfig& cfg, int trials);

nlohmann::json to_json(const CvReport& report);

/// Header trial,fold,size,misclassified,error_percent; one line per fold.
std::string fold_csv(const CvReport& report);

}  // namespace swarmqp
