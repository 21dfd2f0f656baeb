#include "doctest.h"

#include <cmath>

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/eval.hpp"
#include "support.hpp"

using namespace sieve;

namespace {

constexpr Label A = Label::Artifact;
constexpr Label N = Label::NaturalLanguage;

Dataset corpus(std::uint64_t seed, std::size_t n) {
  static const std::vector<std::string> art = {"int {} = foo.bar();", "at com.acme.Foo.run(Foo.java:{})",
                                               "\"id\": {},", "<version>{}</version>", "return {};"};
  static const std::vector<std::string> nl = {"The parser fails when {} entries are read.",
                                              "I think this is a regression in {}.",
                                              "It works on version {} but not on the next one.",
                                              "Could you look at issue {} please?", "We see {} failures a day."};
  std::mt19937_64 g(seed);
  Dataset ds;
  for (std::size_t i = 0; i < n; ++i) {
    const bool is_art = i % 2 == 0;
    std::string t = (is_art ? art : nl)[g() % 5];
    t.replace(t.find("{}"), 2, std::to_string(g() % 100));
    ds.push_back({t, is_art ? A : N, "d" + std::to_string(i % 13), i, Provenance::Manual});
  }
  return ds;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("f1 examples") {
  const std::vector<Label> truth = {A, A, N, N};
  CHECK(f1_macro(truth, truth) == 1.0);

  // 20 balanced lines, each class misses 2
  std::vector<Label> t20, p20;
  for (int i = 0; i < 10; ++i) t20.push_back(A), p20.push_back(i < 8 ? A : N);
  for (int i = 0; i < 10; ++i) t20.push_back(N), p20.push_back(i < 8 ? N : A);
  CHECK(f1_macro(t20, p20) == test::f1_formula(t20, p20));
  CHECK(f1_macro(t20, p20) == doctest::Approx(0.8).epsilon(1e-15));

  const std::vector<Label> all_a(4, A);
  CHECK(f1_macro(truth, all_a) == test::f1_formula(truth, all_a));
  CHECK(f1_macro(truth, all_a) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const std::vector<Label> short_pred = {A};
  CHECK_THROWS_AS(f1_macro(truth, short_pred), Error);
}

TEST_CASE("auc examples") {
  const std::vector<Label> truth = {A, A, N, N};
  CHECK(roc_auc(std::vector<double>{.9, .8, .2, .1}, truth) == 1.0);
  CHECK(roc_auc(std::vector<double>{.5, .5, .5, .5}, truth) == 0.5);
  CHECK(roc_auc(std::vector<double>{.9, .4, .6, .1}, truth) == 0.75);
  CHECK(roc_auc(std::vector<double>{.1, .2, .8, .9}, truth) == 0.0);
  CHECK_THROWS_WITH_AS(roc_auc(std::vector<double>{.1, .2}, std::vector<Label>{A, A}),
                       doctest::Contains("AUC undefined"), Error);
  CHECK_THROWS_AS(roc_auc(std::vector<double>{.1}, truth), Error);
}

TEST_CASE("kappa examples") {
  const std::vector<Label> a = {A, A, N, N};
  CHECK(cohen_kappa(a, a) == 1.0);
  CHECK(cohen_kappa(a, std::vector<Label>{A, N, A, N}) == 0.0);
  CHECK(cohen_kappa(std::vector<Label>{A, A}, std::vector<Label>{A, A}) == 1.0);
  CHECK(cohen_kappa(std::vector<Label>{A, N, A, N}, std::vector<Label>{N, A, N, A}) == -1.0);
  CHECK_THROWS_AS(cohen_kappa(a, std::vector<Label>{A}), Error);
}

TEST_CASE("metrics match the oracles on random instances") {
  std::mt19937_64 g(99);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 2 + g() % 150;
    auto truth = test::random_labels(g, n, static_cast<unsigned>(g() % 101));
    auto pred = test::random_labels(g, n, static_cast<unsigned>(g() % 101));
    CHECK(f1_macro(truth, pred) == test::f1_formula(truth, pred));
    CHECK(cohen_kappa(truth, pred) == test::kappa_formula(truth, pred));
    truth[0] = A;
    truth[1] = N;
    std::vector<double> scores(n);
    // coarse scores force plenty of ties
    for (auto& s : scores) s = static_cast<double>(g() % 7) / 3.0 - 1.0;
    CHECK(std::abs(roc_auc(scores, truth) - test::auc_pairs(scores, truth)) <= 1e-12);
  }
}

TEST_CASE("chance-level agreement gives kappa near zero") {
  std::mt19937_64 g(123);
  for (int rep = 0; rep < 5; ++rep) {
    auto a = test::random_labels(g, 20000, 30);
    auto b = test::random_labels(g, 20000, 60);
    CHECK(std::abs(cohen_kappa(a, b)) <= 0.05);
  }
}

TEST_CASE("confusion and evaluate") {
  const std::vector<Label> truth = {A, A, N, N, N};
  const std::vector<Label> pred = {A, N, A, N, N};
  auto m = confusion(truth, pred);
  CHECK(m.tp == 1);
  CHECK(m.fn == 1);
  CHECK(m.fp == 1);
  CHECK(m.tn == 2);
  auto r = evaluate(truth, pred, std::vector<double>{1, -1, 1, -1, -1});
  CHECK(r.n_lines == 5);
  CHECK(r.f1_macro == f1_macro(truth, pred));
  CHECK_FALSE(r.ci.has_value());
}

TEST_CASE("percentile and stddev") {
  CHECK(percentile({1, 2, 3, 4, 5}, 0.5) == 3);
  CHECK(percentile({5, 1, 4, 2, 3}, 0.0) == 1);
  CHECK(percentile({1, 2, 3, 4, 5}, 1.0) == 5);
  CHECK(percentile({0, 10}, 0.25) == 2.5);
  CHECK(percentile({7}, 0.3) == 7);
  CHECK_THROWS_AS(percentile({}, 0.5), Error);
  CHECK(sample_stddev(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(2.138089935));
  CHECK(sample_stddev(std::vector<double>{0.1, 0.1, 0.1}) == 0.0);
  CHECK(sample_stddev(std::vector<double>{3}) == 0.0);
}

TEST_CASE("bootstrap collects one score per iteration") {
  auto ds = corpus(1, 240);
  BootstrapConfig cfg;
  cfg.n = 12;
  TrainConfig tc;
  tc.sample_fraction = 1.0;
  auto r = bootstrap_eval(ds, cfg, tc);
  CHECK(r.f1_scores.size() == 12);
  CHECK(r.auc_scores.size() == 12);
  REQUIRE(r.report.ci.has_value());
  CHECK(r.report.ci->low <= r.report.ci->high);
  CHECK(r.report.f1_macro == r.report.ci->mean);
  CHECK(r.report.confusion.total() == r.report.n_lines);
  CHECK(r.report.n_lines == 12 * 48);

  auto again = bootstrap_eval(ds, cfg, tc);
  CHECK(again.f1_scores == r.f1_scores);
}

TEST_CASE("bootstrap degenerate case collapses the interval") {
  // every split sees the same two perfectly separable line types
  Dataset ds;
  for (int i = 0; i < 40; ++i) {
    ds.push_back({"x = 1;", A, "a", static_cast<std::size_t>(i), Provenance::Manual});
    ds.push_back({"Please fix this bug.", N, "n", static_cast<std::size_t>(i), Provenance::Manual});
  }
  BootstrapConfig cfg;
  cfg.n = 5;
  TrainConfig tc;
  tc.sample_fraction = 1.0;
  auto r = bootstrap_eval(ds, cfg, tc);
  CHECK(r.report.ci->low == r.report.ci->mean);
  CHECK(r.report.ci->mean == r.report.ci->high);
  CHECK(r.report.ci->mean == 1.0);
}

TEST_CASE("bootstrap needs enough lines") {
  Dataset ds;
  ds.push_back({"x;", A, "a", 0, Provenance::Manual});
  ds.push_back({"hello", N, "n", 0, Provenance::Manual});
  CHECK_THROWS_WITH_AS(bootstrap_eval(ds, BootstrapConfig{}, TrainConfig{}), doctest::Contains("too few lines"),
                       Error);
}

TEST_CASE("learning curve") {
  auto train_ds = corpus(2, 300);
  auto eval_ds = corpus(3, 100);
  LearningCurveConfig cfg;
  cfg.fractions = {0.2, 1.0};
  cfg.runs = 4;
  auto pts = learning_curve(train_ds, eval_ds, cfg, TrainConfig{});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].auc_scores.size() == 4);
  CHECK(pts[1].f1_scores.size() == 4);
  CHECK(pts[0].train_lines == 60);
  CHECK(pts[1].train_lines == 300);
  // the full set is the same subsample every run
  CHECK(pts[1].auc_stddev == 0.0);
  CHECK(pts[1].f1_stddev == 0.0);

  cfg.fractions = {0.5, 0.2};
  CHECK_THROWS_AS(learning_curve(train_ds, eval_ds, cfg, TrainConfig{}), Error);
}

}
