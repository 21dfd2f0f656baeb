#include "artifact_sieve/classifier.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/rng.hpp"
#include "artifact_sieve/text.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace sieve {

namespace {

void validate(const TrainConfig& cfg) {
  if (!(cfg.C > 0.0) || !std::isfinite(cfg.C)) throw Error("C must be a positive number");
  if (cfg.epochs < 1) throw Error("epochs must be at least 1");
  if (!(cfg.sample_fraction > 0.0 && cfg.sample_fraction <= 1.0))
    throw Error("sample fraction must be in (0, 1]");
}

double dot(const std::vector<double>& w, const FeatureVector& x) {
  double s = 0.0;
  for (const auto& e : x.entries) s += w[e.index] * static_cast<double>(e.count);
  return s;
}

// Seed streams used by one training run.
constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kShuffleStream = 1;

}  // namespace

std::pair<std::size_t, std::size_t> stratified_sample_sizes(std::size_t n_artifact,
                                                            std::size_t n_natural,
                                                            double fraction) {
  auto take = [&](std::size_t n) {
    return std::min(n, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
  };
  return {take(n_artifact), take(n_natural)};
}

Dataset stratified_sample(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("sample fraction must be in (0, 1]");
  std::vector<std::size_t> art, nl;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (ds.lines()[i].label == Label::Artifact ? art : nl).push_back(i);
  }
  const auto [k_art, k_nl] = stratified_sample_sizes(art.size(), nl.size(), fraction);
  Rng rng(seed);
  std::vector<bool> kept(ds.size(), false);
  for (std::size_t k : rng.sample_indices(art.size(), k_art)) kept[art[k]] = true;
  for (std::size_t k : rng.sample_indices(nl.size(), k_nl)) kept[nl[k]] = true;
  Dataset out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (kept[i]) out.push_back(ds.lines()[i]);
  }
  return out;
}

LinearModel train(const Dataset& ds, const TrainConfig& cfg) {
  validate(cfg);
  if (ds.count(Label::Artifact) == 0 || ds.count(Label::NaturalLanguage) == 0)
    throw Error("cannot train on a single-class dataset");

  const Dataset sampled = cfg.sample_fraction < 1.0
                              ? stratified_sample(ds, cfg.sample_fraction, derive_seed(cfg.seed, kSampleStream))
                              : ds;
  if (sampled.count(Label::Artifact) == 0 || sampled.count(Label::NaturalLanguage) == 0)
    throw Error("sampled training set lost a class; raise the sample fraction");

  LinearModel model;
  model.config = cfg;
  model.vocabulary = build_vocabulary(sampled, cfg.n_min, cfg.n_max, cfg.min_df);
  if (model.vocabulary.empty()) throw Error("training produced an empty vocabulary");

  const std::size_t n = sampled.size();
  const std::size_t dim = model.vocabulary.size();
  std::vector<FeatureVector> xs;
  std::vector<double> ys;
  xs.reserve(n);
  ys.reserve(n);
  for (const auto& l : sampled.lines()) {
    xs.push_back(vectorize(tokenize_line(l.text), model.vocabulary));
    ys.push_back(l.label == Label::Artifact ? 1.0 : -1.0);
  }

  // w = scale * v keeps the per-step shrink O(1); the bias is the weight of
  // an implicit constant feature and is shrunk with the rest.
  const double lambda = 1.0 / (cfg.C * static_cast<double>(n));
  std::vector<double> v(dim, 0.0);
  double v_bias = 0.0;
  double scale = 1.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(cfg.seed, kShuffleStream));
  std::uint64_t t = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double margin = ys[i] * scale * (dot(v, xs[i]) + v_bias);
      const double shrink = 1.0 - 1.0 / static_cast<double>(t);
      if (shrink == 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        v_bias = 0.0;
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * ys[i] / scale;
        for (const auto& e : xs[i].entries) v[e.index] += step * static_cast<double>(e.count);
        v_bias += step;
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        v_bias *= scale;
        scale = 1.0;
      }
    }
  }

  model.weights.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) model.weights[k] = scale * v[k];
  model.bias = scale * v_bias;
  return model;
}

double decision_score(const LinearModel& model, const FeatureVector& x) {
  return dot(model.weights, x) + model.bias;
}

double decision_score(const LinearModel& model, std::string_view line) {
  return decision_score(model, vectorize(tokenize_line(line), model.vocabulary));
}

std::vector<Prediction> predict(const LinearModel& model, std::span<const std::string> lines) {
  std::vector<Prediction> out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    if (is_blank(line)) {
      out.push_back({Label::NaturalLanguage, 0.0, true});
      continue;
    }
    const double s = decision_score(model, line);
    out.push_back({s > 0.0 ? Label::Artifact : Label::NaturalLanguage, s, false});
  }
  return out;
}

std::string format_model(const LinearModel& model) {
  ordered_json j;
  j["format_version"] = model.format_version;
  const auto& c = model.config;
  j["config"] = {{"C", c.C},
                 {"epochs", c.epochs},
                 {"seed", c.seed},
                 {"sample_fraction", c.sample_fraction},
                 {"n_min", c.n_min},
                 {"n_max", c.n_max},
                 {"min_df", c.min_df}};
  j["bias"] = model.bias;
  j["vocabulary"] = model.vocabulary.terms();
  j["weights"] = model.weights;
  return j.dump() + "\n";
}

LinearModel parse_model(std::string_view content) {
  ordered_json j = ordered_json::parse(content, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error("model file is truncated or not valid JSON");
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw Error("unsupported model format_version " + std::to_string(version) +
                  " (this build reads version " + std::to_string(kModelFormatVersion) + ")");
    LinearModel m;
    m.format_version = version;
    const auto& c = j.at("config");
    m.config.C = c.at("C").get<double>();
    m.config.epochs = c.at("epochs").get<int>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.sample_fraction = c.at("sample_fraction").get<double>();
    m.config.n_min = c.at("n_min").get<int>();
    m.config.n_max = c.at("n_max").get<int>();
    m.config.min_df = c.at("min_df").get<int>();
    m.bias = j.at("bias").get<double>();
    m.vocabulary = Vocabulary(j.at("vocabulary").get<std::vector<std::string>>(), m.config.n_min,
                              m.config.n_max, m.config.min_df);
    m.weights = j.at("weights").get<std::vector<double>>();
    if (m.weights.size() != m.vocabulary.size())
      throw Error("model has " + std::to_string(m.weights.size()) + " weights for " +
                  std::to_string(m.vocabulary.size()) + " vocabulary entries");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const LinearModel& model, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << format_model(model);
  if (!out) throw Error("cannot write " + path.string());
}

LinearModel load_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace sieve
