#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/features.hpp"

namespace sieve {

struct TrainConfig {
  double C = 1.0;
  int epochs = 10;
  std::uint64_t seed = 0;
  double sample_fraction = 0.4;
  int n_min = 1;
  int n_max = 3;
  int min_df = 1;
};

inline constexpr int kModelFormatVersion = 1;

/// Linear decision function over n-gram counts.
/// score > 0 -> Artifact, otherwise NaturalLanguage.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  Vocabulary vocabulary;
  TrainConfig config;
  int format_version = kModelFormatVersion;
};

/// Per-class sizes of a stratified subsample: round(fraction * count).
std::pair<std::size_t, std::size_t> stratified_sample_sizes(std::size_t n_artifact,
                                                            std::size_t n_natural,
                                                            double fraction);

/// Seeded stratified subsample. Survivors keep their relative order.
Dataset stratified_sample(const Dataset& ds, double fraction, std::uint64_t seed);

/// L2-regularized hinge loss (lambda = 1 / (C * N)) minimized with
/// Pegasos-style stochastic subgradient steps 1 / (lambda * t), one seeded
/// shuffle per epoch, weights starting at zero. The bias is trained as the
/// weight of a constant feature. Artifact is the +1 class.
LinearModel train(const Dataset& ds, const TrainConfig& cfg);

double decision_score(const LinearModel& model, std::string_view line);
double decision_score(const LinearModel& model, const FeatureVector& x);

struct Prediction {
  Label label = Label::NaturalLanguage;
  double score = 0.0;
  bool blank = false;
};

std::vector<Prediction> predict(const LinearModel& model, std::span<const std::string> lines);

std::string format_model(const LinearModel& model);
LinearModel parse_model(std::string_view content);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace sieve
