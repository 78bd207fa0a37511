#include "swarmqp/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "swarmqp/errors.hpp"
#include "swarmqp/preprocessing.hpp"
#include "swarmqp/random.hpp"

namespace swarmqp {

FoldPlan make_fold_plan(const Dataset& d, std::uint64_t trial_seed) {
  FoldPlan plan;
  plan.trial_seed = trial_seed;
  plan.fold_of.assign(static_cast<std::size_t>(d.size()), -1);
  Rng rng(trial_seed);
  for (int c = 0; c < d.class_count(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      if (d.labels[i] == c) members.push_back(i);
    }
    if (members.size() < static_cast<std::size_t>(kFolds)) {
      throw UsageError("class '" + d.class_names[static_cast<std::size_t>(c)] + "' has " +
                       std::to_string(members.size()) + " samples; " + std::to_string(kFolds) +
                       "-fold cross-validation needs at least " + std::to_string(kFolds));
    }
    std::shuffle(members.begin(), members.end(), rng.engine());
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      plan.fold_of[members[pos]] = static_cast<int>(pos % kFolds);
    }
  }
  return plan;
}

CvReport cross_validate(const Dataset& input, const PsoConfig& cfg, int trials) {
  if (trials < 1) throw UsageError("cross_validate: trials must be positive");
  cfg.validate();
  const Dataset d = canonical_order(input);

  TrainOptions options;
  options.overlap = OverlapPolicy::Shrink;
  options.preprocess = whiten_and_project_pair;

  CvReport report;
  report.dataset = d.name;
  report.config = cfg;
  for (int t = 0; t < trials; ++t) {
    const FoldPlan plan = make_fold_plan(d, derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    TrialResult result;
    result.trial_seed = plan.trial_seed;
    for (int f = 0; f < kFolds; ++f) {
      std::vector<Eigen::Index> train;
      std::vector<Eigen::Index> test;
      for (std::size_t i = 0; i < plan.fold_of.size(); ++i) {
        (plan.fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
      }
      PsoConfig fold_cfg = cfg;
      fold_cfg.seed = derive_seed(plan.trial_seed, static_cast<std::uint64_t>(f + 1));
      const MulticlassModel model = multiclass_train(d.subset(train), fold_cfg, options);

      int wrong = 0;
      for (const auto i : test) {
        if (model.predict(d.features.row(i).transpose()) != d.labels[static_cast<std::size_t>(i)]) ++wrong;
      }
      result.fold_errors.push_back(wrong);
      result.fold_sizes.push_back(static_cast<int>(test.size()));
    }
    const int wrong = std::accumulate(result.fold_errors.begin(), result.fold_errors.end(), 0);
    result.error_percent = 100.0 * wrong / static_cast<double>(d.size());
    report.trials.push_back(std::move(result));
  }

  double sum = 0.0;
  for (const auto& r : report.trials) sum += r.error_percent;
  report.mean_error_percent = sum / trials;
  if (trials > 1) {
    double sq = 0.0;
    for (const auto& r : report.trials) sq += std::pow(r.error_percent - report.mean_error_percent, 2);
    report.stddev_error_percent = std::sqrt(sq / (trials - 1));
  }
  return report;
}

nlohmann::json to_json(const CvReport& report) {
  std::vector<double> errors;
  nlohmann::json per_trial = nlohmann::json::array();
  for (const auto& r : report.trials) {
    errors.push_back(r.error_percent);
    per_trial.push_back({{"trial_seed", r.trial_seed},
                         {"error_percent", r.error_percent},
                         {"fold_misclassified", r.fold_errors},
                         {"fold_sizes", r.fold_sizes}});
  }
  return {{"dataset", report.dataset},
          {"trials", report.trials.size()},
          {"folds", kFolds},
          {"trial_errors_percent", errors},
          {"mean_error_percent", report.mean_error_percent},
          {"stddev_error_percent", report.stddev_error_percent},
          {"per_trial", per_trial},
          {"config", to_json(report.config)},
          {"overlap", "shrink"},
          {"preprocessing", "pair_whitening_2d_projection"}};
}

std::string fold_csv(const CvReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,fold,size,misclassified,error_percent\n";
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    const auto& r = report.trials[t];
    for (std::size_t f = 0; f < r.fold_errors.size(); ++f) {
      out << t << ',' << f << ',' << r.fold_sizes[f] << ',' << r.fold_errors[f] << ','
          << 100.0 * r.fold_errors[f] / r.fold_sizes[f] << '\n';
    }
  }
  return out.str();
}

}  // namespace swarmqp
