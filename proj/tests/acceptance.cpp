// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/baseline.hpp"
#include "artifact_sieve/classifier.hpp"
#include "artifact_sieve/eval.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "laws.hpp"
#include "support.hpp"

using namespace sieve;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Runs the CLI in-process; throws with its stderr when it fails.
std::string cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    throw std::runtime_error("artifact-sieve " + joined + "exited " + std::to_string(code) + ": " + err.str());
  }
  return out.str();
}

// generate -> split (documents 80/20, balanced) -> train -> evaluate
struct Pipeline {
  fs::path dir;
  fs::path dataset, train_split, test_split, model, gen_report, split_report, eval_report;
  double train_seconds = 0;

  explicit Pipeline(fs::path d) : dir(std::move(d)) {
    dataset = dir / "dataset.jsonl";
    train_split = dir / "train.jsonl";
    test_split = dir / "test.jsonl";
    model = dir / "model.json";
    gen_report = dir / "generate.json";
    split_report = dir / "split.json";
    eval_report = dir / "eval.json";
    const auto fx = test::fixture_dir();
    cli_run({"generate", "--issues", (fx / "issues").string(), "--docs", (fx / "docs").string(), "--out",
             dataset.string(), "--seed", "0", "--report", gen_report.string()});
    test::write_file(split_report, cli_run({"split", "--dataset", dataset.string(), "--train-out", train_split.string(),
                                            "--test-out", test_split.string(), "--test-fraction", "0.2", "--balance",
                                            "--seed", "0"}));
    const auto t0 = Clock::now();
    cli_run({"train", "--dataset", train_split.string(), "--out", model.string(), "--seed", "0"});
    train_seconds = seconds_since(t0);
    cli_run({"evaluate", "--model", model.string(), "--dataset", test_split.string(), "--out", eval_report.string()});
  }
};

Outcome metric_oracles() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(1);
  std::size_t auc_bad = 0, kappa_bad = 0, f1_bad = 0;
  double worst_auc = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + g() % 199;
    auto truth = test::random_labels(g, n, static_cast<unsigned>(1 + g() % 99));
    auto pred = test::random_labels(g, n, static_cast<unsigned>(g() % 101));
    // AUC needs both classes present
    const std::size_t i_art = g() % n;
    const std::size_t i_nl = (i_art + 1 + g() % (n - 1)) % n;
    truth[i_art] = Label::Artifact;
    truth[i_nl] = Label::NaturalLanguage;
    std::vector<double> scores(n);
    const bool coarse = i % 2 == 0;
    for (auto& s : scores) {
      s = coarse ? static_cast<double>(g() % 9) : std::ldexp(static_cast<double>(g() >> 11), -53) * 4 - 2;
    }
    const double d = std::abs(roc_auc(scores, truth) - test::auc_pairs(scores, truth));
    worst_auc = std::max(worst_auc, d);
    auc_bad += d > 1e-12;
    kappa_bad += cohen_kappa(truth, pred) != test::kappa_formula(truth, pred);
    f1_bad += f1_macro(truth, pred) != test::f1_formula(truth, pred);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = auc_bad == 0 && kappa_bad == 0 && f1_bad == 0 && secs < 10.0;
  o.detail = "1000 instances, auc mismatches " + std::to_string(auc_bad) + " (max |diff| " +
             [&] {
               char b[32];
               std::snprintf(b, sizeof b, "%.1e", worst_auc);
               return std::string(b);
             }() + "), kappa mismatches " + std::to_string(kappa_bad) +
             ", f1 mismatches " + std::to_string(f1_bad) + ", " + fmt(secs, 2) + " s (limit 10 s)";
  return o;
}

Outcome tokenizer_laws() {
  const auto t0 = Clock::now();
  std::mt19937_64 g(2);
  std::size_t bad = 0, semicolon_lines = 0;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    std::string line = test::random_line(g, 160);
    if (i % 4 == 0) line += ';';
    semicolon_lines += !line.empty() && line.back() == ';';
    const auto why = test::tokenizer_law_violation(line);
    if (!why.empty()) {
      if (bad++ == 0) first = why;
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = bad == 0 && secs < 5.0;
  o.detail = "10000 lines (" + std::to_string(semicolon_lines) + " ending in ';'), violations " +
             std::to_string(bad) + (bad ? " first: " + first : "") + ", " + fmt(secs, 2) + " s (limit 5 s)";
  return o;
}

Outcome end_to_end(const Pipeline& p) {
  const auto gen = json::parse(test::read_file(p.gen_report));
  const auto rep = json::parse(test::read_file(p.eval_report));
  const auto docs_used = gen["documents_used"].get<std::size_t>();
  const auto lines = gen["n_lines"].get<std::size_t>();
  std::size_t reports = 0;
  {
    std::set<std::string> issue_ids;
    for (const auto& d : load_documents(test::fixture_dir() / "issues", DocumentKind::IssueTicket))
      if (!filter_by_labels(std::vector<Document>{d}, default_bug_labels()).empty()) issue_ids.insert(d.id);
    reports = issue_ids.size();
  }
  const std::size_t truth_lines = read_dataset(test::fixture_dir() / "truth.jsonl").size();
  const double f1 = rep["f1_macro"].get<double>();
  const double auc = rep["roc_auc"].get<double>();
  Outcome o;
  o.pass = reports >= 60 && truth_lines >= 2000 && f1 >= 0.90 && auc >= 0.93;
  o.detail = std::to_string(reports) + " bug reports, " + std::to_string(truth_lines) +
             " hand-labeled lines; generated " + std::to_string(lines) + " lines from " +
             std::to_string(docs_used) + " documents; test F1 " + fmt(f1) + " (>= 0.90), AUC " + fmt(auc) +
             " (>= 0.93) on " + std::to_string(rep["n_lines"].get<std::size_t>()) + " lines";
  return o;
}

// Hand-labeled lines of every document the model never trained on,
// including issues the generator skipped for lacking fences.
Outcome baseline_gap(const Pipeline& p) {
  // same document draw as the split command
  const Dataset generated = read_dataset(p.dataset);
  const auto test_ids = choose_test_documents(generated, 0.2, 0);
  std::set<std::string> train_docs;
  for (const auto& l : generated.lines()) train_docs.insert(l.doc_id);
  for (const auto& id : test_ids) train_docs.erase(id);
  Dataset held_out;
  const Dataset truth_all = read_dataset(test::fixture_dir() / "truth.jsonl");
  for (const auto& l : truth_all.lines())
    if (!train_docs.count(l.doc_id)) held_out.push_back(l);

  const LinearModel model = load_model(p.model);
  const double model_f1 = evaluate_model(model, held_out).f1_macro;
  std::vector<Label> truth;
  for (const auto& l : held_out.lines()) truth.push_back(l.label);
  const double line_f1 = f1_macro(truth, baseline_predict(held_out, BaselineMode::Line));
  const double doc_f1 = f1_macro(truth, baseline_predict(held_out, BaselineMode::Document));
  Outcome o;
  o.pass = model_f1 - line_f1 >= 0.05 && doc_f1 >= line_f1;
  o.detail = std::to_string(held_out.size()) + " held-out hand-labeled lines: model F1 " + fmt(model_f1) +
             ", line baseline " + fmt(line_f1) + ", document baseline " + fmt(doc_f1) + "; gap " +
             fmt(model_f1 - line_f1) + " (>= 0.05)";
  return o;
}

Outcome performance(const Pipeline& p) {
  // 10,000 realistic lines cycled from the hand-labeled corpus
  const auto truth = read_dataset(test::fixture_dir() / "truth.jsonl");
  std::string text;
  for (std::size_t i = 0; i < 10000; ++i) text += truth.lines()[i % truth.size()].text + "\n";
  const fs::path in = p.dir / "10k.txt";
  test::write_file(in, text);
  const auto t0 = Clock::now();
  const std::string out = cli_run({"predict", "--model", p.model.string(), "--in", in.string()});
  const double secs = seconds_since(t0);
  const auto n_out = static_cast<std::size_t>(std::count(out.begin(), out.end(), '\n'));
  Outcome o;
  o.pass = n_out == 10000 && secs <= 5.0 && p.train_seconds <= 60.0;
  o.detail = "predict 10000 lines in " + fmt(secs, 3) + " s (limit 5 s, " + std::to_string(n_out) +
             " labels); train in " + fmt(p.train_seconds, 3) + " s (limit 60 s)";
  return o;
}

Outcome determinism(const Pipeline& a, const Pipeline& b) {
  const std::vector<std::pair<fs::path, fs::path>> files = {
      {a.dataset, b.dataset}, {a.train_split, b.train_split},           {a.test_split, b.test_split},
      {a.model, b.model},     {a.gen_report, b.gen_report}, {a.split_report, b.split_report},
      {a.eval_report, b.eval_report}};
  std::vector<std::string> differ;
  for (const auto& [x, y] : files) {
    const auto bx = test::read_file(x);
    if (bx.empty() || bx != test::read_file(y)) differ.push_back(x.filename().string());
  }
  Outcome o;
  o.pass = differ.empty();
  o.detail = differ.empty() ? "dataset, splits, model and reports byte-identical across two runs"
                            : "differing files:";
  for (const auto& d : differ) o.detail += " " + d;
  return o;
}

Outcome curve(const Pipeline& p) {
  LearningCurveConfig cfg;
  cfg.fractions = {0.1, 0.5, 1.0};
  cfg.runs = 10;
  cfg.seed = 0;
  const auto pts = learning_curve(read_dataset(p.train_split), read_dataset(p.test_split), cfg, TrainConfig{});
  Outcome o;
  bool counts_ok = true;
  for (const auto& pt : pts) counts_ok = counts_ok && pt.auc_scores.size() == 10;
  o.pass = pts.size() == 3 && counts_ok && pts[2].auc_mean >= pts[0].auc_mean;
  o.detail = "mean AUC";
  for (const auto& pt : pts)
    o.detail += " @" + fmt(pt.fraction, 1) + "=" + fmt(pt.auc_mean) + " (sd " + fmt(pt.auc_stddev) + ", " +
                std::to_string(pt.train_lines) + " lines)";
  return o;
}

Outcome bootstrap(const Pipeline& p) {
  const Dataset ds = balance(read_dataset(p.dataset), 0);
  BootstrapConfig cfg;
  cfg.n = 100;
  cfg.alpha = 0.95;
  cfg.seed = 0;
  TrainConfig tc;
  tc.sample_fraction = 1.0;
  const auto r = bootstrap_eval(ds, cfg, tc);
  const auto& ci = *r.report.ci;
  const double width = ci.high - ci.low;
  Outcome o;
  o.pass = r.f1_scores.size() == 100 && ci.low <= r.report.f1_macro && r.report.f1_macro <= ci.high &&
           width <= 0.15;
  o.detail = std::to_string(r.f1_scores.size()) + " iterations on " + std::to_string(ds.size()) +
             " lines: F1 mean " + fmt(r.report.f1_macro) + ", 95% CI [" + fmt(ci.low) + ", " + fmt(ci.high) +
             "], width " + fmt(width) + " (<= 0.15)";
  return o;
}

}  // namespace

int main() {
  test::TempDir scratch;
  fs::create_directories(scratch / "run1");
  fs::create_directories(scratch / "run2");

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  std::unique_ptr<Pipeline> p1, p2;
  auto pipelines = [&]() -> const Pipeline& {
    if (!p1) {
      p1 = std::make_unique<Pipeline>(scratch / "run1");
      p2 = std::make_unique<Pipeline>(scratch / "run2");
    }
    return *p1;
  };

  criteria.emplace_back("1 metric oracles", metric_oracles);
  criteria.emplace_back("2 tokenizer laws", tokenizer_laws);
  criteria.emplace_back("3 end-to-end F1/AUC", [&] { return end_to_end(pipelines()); });
  criteria.emplace_back("4 baseline gap", [&] { return baseline_gap(pipelines()); });
  criteria.emplace_back("5 performance", [&] { return performance(pipelines()); });
  criteria.emplace_back("6 determinism", [&] {
    pipelines();
    return determinism(*p1, *p2);
  });
  criteria.emplace_back("7 learning curve", [&] { return curve(pipelines()); });
  criteria.emplace_back("8 bootstrap", [&] { return bootstrap(pipelines()); });

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
