#include "artifact_sieve/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/rng.hpp"

namespace sieve {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(std::string(what) + ": sequences differ in length");
  if (a == 0) throw Error(std::string(what) + ": empty input");
}

double class_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

double mean_within_range(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return std::clamp(mean, *lo, *hi);
}

ConfidenceInterval interval(const std::vector<double>& scores, double alpha) {
  const double tail = (1.0 - alpha) / 2.0;
  return {percentile(scores, tail), percentile(scores, 1.0 - tail), mean_within_range(scores)};
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> pred) {
  require_same_length(truth.size(), pred.size(), "confusion");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == Label::Artifact;
    const bool predicted = pred[i] == Label::Artifact;
    if (actual && predicted) ++m.tp;
    else if (!actual && predicted) ++m.fp;
    else if (actual) ++m.fn;
    else ++m.tn;
  }
  return m;
}

double f1_macro(std::span<const Label> truth, std::span<const Label> pred) {
  const ConfusionMatrix m = confusion(truth, pred);
  // the natural-language class sees tn as its tp, and fp/fn swap roles.
  // Summed as one fraction so the result is rounded once.
  const std::uint64_t d_art = 2 * m.tp + m.fp + m.fn;
  const std::uint64_t d_nl = 2 * m.tn + m.fn + m.fp;
  if (d_art == 0) return class_f1(m.tn, m.fn, m.fp) / 2.0;
  if (d_nl == 0) return class_f1(m.tp, m.fp, m.fn) / 2.0;
  const std::uint64_t num = 2 * m.tp * d_nl + 2 * m.tn * d_art;
  return static_cast<double>(num) / static_cast<double>(2 * d_art * d_nl);
}

double roc_auc(std::span<const double> scores, std::span<const Label> truth) {
  require_same_length(scores.size(), truth.size(), "roc_auc");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // ranks doubled so tie averages stay integral
  std::uint64_t pos = 0;
  std::uint64_t rank_sum2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::uint64_t avg_rank2 = static_cast<std::uint64_t>(i + 1 + j);  // 2 * (i+1 + j) / 2
    for (std::size_t k = i; k < j; ++k) {
      if (truth[order[k]] == Label::Artifact) {
        ++pos;
        rank_sum2 += avg_rank2;
      }
    }
    i = j;
  }
  const std::uint64_t neg = n - pos;
  if (pos == 0 || neg == 0) throw Error("AUC undefined for single-class truth");
  // U = rank_sum - pos(pos+1)/2, kept doubled
  const std::uint64_t u2 = rank_sum2 - pos * (pos + 1);
  return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

double cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
  require_same_length(a.size(), b.size(), "cohen_kappa");
  const auto n = static_cast<std::int64_t>(a.size());
  std::int64_t agree = 0, a_art = 0, b_art = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    a_art += a[i] == Label::Artifact;
    b_art += b[i] == Label::Artifact;
  }
  // with counts: p_o = agree/n, p_e = S/n^2
  const std::int64_t s = a_art * b_art + (n - a_art) * (n - b_art);
  const std::int64_t n2 = n * n;
  if (s == n2) return agree == n ? 1.0 : 0.0;
  return static_cast<double>(n * agree - s) / static_cast<double>(n2 - s);
}

EvalReport evaluate(std::span<const Label> truth, std::span<const Label> pred,
                    std::span<const double> scores) {
  EvalReport r;
  r.confusion = confusion(truth, pred);
  r.f1_macro = f1_macro(truth, pred);
  r.roc_auc = roc_auc(scores, truth);
  r.n_lines = truth.size();
  return r;
}

EvalReport evaluate_model(const LinearModel& model, const Dataset& ds) {
  std::vector<std::string> texts;
  texts.reserve(ds.size());
  for (const auto& l : ds.lines()) texts.push_back(l.text);
  const auto preds = predict(model, texts);
  std::vector<Label> truth, pred;
  std::vector<double> scores;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].blank) continue;
    truth.push_back(ds.lines()[i].label);
    pred.push_back(preds[i].label);
    scores.push_back(preds[i].score);
  }
  return evaluate(truth, pred, scores);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || values[lo] == values[hi]) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_within_range(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

BootstrapResult bootstrap_eval(const Dataset& ds, const BootstrapConfig& cfg,
                               const TrainConfig& train_cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error("alpha must be in (0, 1)");
  if (!(cfg.split > 0.0 && cfg.split < 1.0)) throw Error("split must be in (0, 1)");
  if (cfg.n < 1) throw Error("bootstrap needs at least one iteration");

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    by_class[ds.lines()[i].label == Label::Artifact].push_back(i);
  }
  std::size_t n_train[2];
  for (int c = 0; c < 2; ++c) {
    n_train[c] = static_cast<std::size_t>(std::llround(cfg.split * static_cast<double>(by_class[c].size())));
    if (n_train[c] == 0 || n_train[c] == by_class[c].size())
      throw Error("too few lines to split: each class needs lines on both sides of the split");
  }

  BootstrapResult result;
  for (int it = 0; it < cfg.n; ++it) {
    const std::uint64_t iter_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(it));
    Rng rng(iter_seed);
    std::vector<bool> in_train(ds.size(), false);
    for (int c = 0; c < 2; ++c) {
      std::vector<std::size_t> idx = by_class[c];
      rng.shuffle(std::span<std::size_t>(idx));
      for (std::size_t k = 0; k < n_train[c]; ++k) in_train[idx[k]] = true;
    }
    Dataset train_part, test_part;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      (in_train[i] ? train_part : test_part).push_back(ds.lines()[i]);
    }
    TrainConfig tc = train_cfg;
    tc.seed = derive_seed(iter_seed, 1);
    const EvalReport r = evaluate_model(train(train_part, tc), test_part);
    result.f1_scores.push_back(r.f1_macro);
    result.auc_scores.push_back(r.roc_auc);
    result.report.confusion.tp += r.confusion.tp;
    result.report.confusion.fp += r.confusion.fp;
    result.report.confusion.fn += r.confusion.fn;
    result.report.confusion.tn += r.confusion.tn;
    result.report.n_lines += r.n_lines;
  }
  result.report.ci = interval(result.f1_scores, cfg.alpha);
  result.auc_ci = interval(result.auc_scores, cfg.alpha);
  result.report.f1_macro = result.report.ci->mean;
  result.report.roc_auc = result.auc_ci.mean;
  return result;
}

std::vector<LearningCurvePoint> learning_curve(const Dataset& ds_train, const Dataset& ds_eval,
                                               const LearningCurveConfig& cfg,
                                               const TrainConfig& train_cfg) {
  if (ds_train.empty() || ds_eval.empty()) throw Error("learning curve needs non-empty datasets");
  if (cfg.runs < 1) throw Error("learning curve needs at least one run per fraction");
  if (cfg.fractions.empty()) throw Error("learning curve needs at least one fraction");
  for (std::size_t i = 0; i < cfg.fractions.size(); ++i) {
    const double f = cfg.fractions[i];
    if (!(f > 0.0 && f <= 1.0)) throw Error("learning-curve fractions must be in (0, 1]");
    if (i > 0 && !(cfg.fractions[i - 1] < f))
      throw Error("learning-curve fractions must be ascending and unique");
  }

  TrainConfig tc = train_cfg;
  tc.sample_fraction = 1.0;
  std::vector<LearningCurvePoint> curve;
  for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
    LearningCurvePoint p;
    p.fraction = cfg.fractions[fi];
    for (int r = 0; r < cfg.runs; ++r) {
      const auto stream = static_cast<std::uint64_t>(fi) * static_cast<std::uint64_t>(cfg.runs) +
                          static_cast<std::uint64_t>(r);
      const Dataset subset = stratified_sample(ds_train, p.fraction, derive_seed(cfg.seed, stream));
      p.train_lines = subset.size();
      const EvalReport rep = evaluate_model(train(subset, tc), ds_eval);
      p.auc_scores.push_back(rep.roc_auc);
      p.f1_scores.push_back(rep.f1_macro);
    }
    p.auc_mean = mean_within_range(p.auc_scores);
    p.f1_mean = mean_within_range(p.f1_scores);
    p.auc_stddev = sample_stddev(p.auc_scores);
    p.f1_stddev = sample_stddev(p.f1_scores);
    curve.push_back(std::move(p));
  }
  return curve;
}

}  // namespace sieve
