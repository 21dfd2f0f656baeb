#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/classifier.hpp"

namespace sieve {

/// Positive class is Artifact.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> pred);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  double mean = 0.0;
};

struct EvalReport {
  double f1_macro = 0.0;
  double roc_auc = 0.0;
  ConfusionMatrix confusion;
  std::size_t n_lines = 0;
  std::optional<ConfidenceInterval> ci;
};

/// Mean of the per-class F1 scores. A class with no true and no predicted
/// members scores 0.
double f1_macro(std::span<const Label> truth, std::span<const Label> pred);

/// Mann-Whitney estimate with average ranks for ties.
double roc_auc(std::span<const double> scores, std::span<const Label> truth);

/// (p_o - p_e) / (1 - p_e). When p_e == 1 the result is 1 for identical
/// sequences and 0 otherwise.
double cohen_kappa(std::span<const Label> a, std::span<const Label> b);

EvalReport evaluate(std::span<const Label> truth, std::span<const Label> pred,
                    std::span<const double> scores);

/// Scores every line of the dataset with the model. Blank lines are skipped.
EvalReport evaluate_model(const LinearModel& model, const Dataset& ds);

/// Linear-interpolated percentile (q in [0, 1]) of unsorted values.
double percentile(std::vector<double> values, double q);

struct BootstrapConfig {
  double alpha = 0.95;
  int n = 100;
  double split = 0.8;
  std::uint64_t seed = 0;
};

struct BootstrapResult {
  /// f1_macro / roc_auc hold the iteration means; ci is the F1 interval.
  EvalReport report;
  ConfidenceInterval auc_ci;
  std::vector<double> f1_scores;
  std::vector<double> auc_scores;
};

/// n seeded re-splits of the dataset at line level (no replacement), each
/// trained and evaluated; percentile interval over the iteration scores.
BootstrapResult bootstrap_eval(const Dataset& ds, const BootstrapConfig& cfg,
                               const TrainConfig& train_cfg);

struct LearningCurveConfig {
  std::vector<double> fractions{0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
  int runs = 10;
  std::uint64_t seed = 0;
};

struct LearningCurvePoint {
  double fraction = 0.0;
  std::size_t train_lines = 0;
  std::vector<double> auc_scores;
  std::vector<double> f1_scores;
  double auc_mean = 0.0;
  double auc_stddev = 0.0;
  double f1_mean = 0.0;
  double f1_stddev = 0.0;
};

/// For every fraction, `runs` stratified subsamples of ds_train are trained
/// (with train_cfg, sampling disabled) and scored on ds_eval.
std::vector<LearningCurvePoint> learning_curve(const Dataset& ds_train, const Dataset& ds_eval,
                                               const LearningCurveConfig& cfg,
                                               const TrainConfig& train_cfg);

/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_stddev(std::span<const double> values);

}  // namespace sieve
