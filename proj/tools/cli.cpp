#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/baseline.hpp"
#include "artifact_sieve/classifier.hpp"
#include "artifact_sieve/corpus.hpp"
#include "artifact_sieve/error.hpp"
#include "artifact_sieve/eval.hpp"
#include "artifact_sieve/fetch.hpp"
#include "artifact_sieve/rng.hpp"
#include "artifact_sieve/rules.hpp"
#include "artifact_sieve/text.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace sieve::cli {

namespace {

constexpr const char* kTokenEnv = "ARTIFACT_SIEVE_TOKEN";

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sanitize_utf8(buf.str());
}

std::vector<std::string> read_lines(const fs::path& path) {
  const std::string content = read_text(path);
  if (content.empty()) return {};
  return split_text_lines(content);
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

// Writes to the file when a path is given, stdout otherwise.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_text(path, content);
  }
}

ordered_json report_json(const EvalReport& r) {
  ordered_json j;
  j["f1_macro"] = r.f1_macro;
  j["roc_auc"] = r.roc_auc;
  j["tp"] = r.confusion.tp;
  j["fp"] = r.confusion.fp;
  j["fn"] = r.confusion.fn;
  j["tn"] = r.confusion.tn;
  j["n_lines"] = r.n_lines;
  if (r.ci) {
    j["ci_low"] = r.ci->low;
    j["ci_high"] = r.ci->high;
    j["ci_mean"] = r.ci->mean;
  }
  return j;
}

std::vector<Label> read_label_file(const fs::path& path) {
  std::vector<Label> labels;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    try {
      labels.push_back(parse_label(lines[i]));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return labels;
}

struct GenerateArgs {
  std::vector<std::string> issues;
  std::vector<std::string> docs;
  std::string out;
  std::string report;
  std::set<std::string> labels = default_bug_labels();
  bool balance = false;
  std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.issues.empty() && a.docs.empty()) {
    err << "generate: give at least one --issues or --docs source\n";
    return kExitDataError;
  }
  std::vector<Document> docs;
  for (const auto& p : a.issues) {
    auto part = filter_by_labels(load_documents(p, DocumentKind::IssueTicket), a.labels);
    std::move(part.begin(), part.end(), std::back_inserter(docs));
  }
  for (const auto& p : a.docs) {
    auto part = load_documents(p, DocumentKind::DocumentationFile);
    std::move(part.begin(), part.end(), std::back_inserter(docs));
  }
  BuildStats stats;
  Dataset ds = build_dataset(docs, &stats);
  if (ds.empty()) {
    err << "generate: no usable documents (no issue with a fenced code block, no documentation lines)\n";
    return kExitDataError;
  }
  if (a.balance) ds = balance(ds, a.seed);
  write_dataset(a.out, ds);

  ordered_json r;
  r["rule_table_version"] = rules::kTableVersion;
  r["documents_seen"] = stats.documents_seen;
  r["documents_used"] = stats.documents_used;
  r["split"] = {{"n_artifact", stats.split.n_artifact},
                {"n_natural", stats.split.n_natural},
                {"n_discarded", stats.split.n_discarded},
                {"n_blank", stats.split.n_blank}};
  r["n_reclassified"] = stats.n_reclassified;
  r["n_filter_discarded"] = stats.n_filter_discarded;
  r["filter_hits"] = ordered_json::object();
  for (const auto& [id, n] : stats.filter_hits) r["filter_hits"][id] = n;
  r["balanced"] = a.balance;
  r["n_artifact"] = ds.count(Label::Artifact);
  r["n_natural"] = ds.count(Label::NaturalLanguage);
  r["n_lines"] = ds.size();
  const std::string text = r.dump(2) + "\n";
  if (!a.report.empty()) write_text(a.report, text);
  out << text;
  return kExitOk;
}

struct SplitArgs {
  std::string dataset;
  std::string train_out;
  std::string test_out;
  std::string linked;
  double test_fraction = -1.0;
  bool balance = false;
  std::uint64_t seed = 0;
};

int cmd_split(const SplitArgs& a, std::ostream& out, std::ostream& err) {
  if (a.linked.empty() == (a.test_fraction < 0.0)) {
    err << "split: give exactly one of --linked or --test-fraction\n";
    return kExitDataError;
  }
  const Dataset ds = read_dataset(a.dataset);
  std::unordered_set<std::string> test_ids;
  if (!a.linked.empty()) {
    for (const auto& line : read_lines(a.linked)) {
      if (!is_blank(line)) test_ids.insert(line);
    }
  } else {
    for (auto& id : choose_test_documents(ds, a.test_fraction, a.seed)) test_ids.insert(std::move(id));
  }
  auto parts = split_train_test(ds, [&](std::string_view id) { return test_ids.contains(std::string(id)); });
  if (a.balance) {
    parts.train = balance(parts.train, a.seed);
    parts.test = balance(parts.test, derive_seed(a.seed, 1));
  }
  write_dataset(a.train_out, parts.train);
  write_dataset(a.test_out, parts.test);
  ordered_json r;
  r["train_lines"] = parts.train.size();
  r["test_lines"] = parts.test.size();
  r["test_documents"] = test_ids.size();
  out << r.dump(2) << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string dataset;
  std::string out;
  TrainConfig cfg;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const Dataset ds = read_dataset(a.dataset);
  const auto start = std::chrono::steady_clock::now();
  const LinearModel model = train(ds, a.cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  save_model(model, a.out);

  const auto [k_art, k_nl] = a.cfg.sample_fraction < 1.0
                                 ? stratified_sample_sizes(ds.count(Label::Artifact),
                                                           ds.count(Label::NaturalLanguage), a.cfg.sample_fraction)
                                 : std::pair{ds.count(Label::Artifact), ds.count(Label::NaturalLanguage)};
  ordered_json r;
  r["lines_used"] = k_art + k_nl;
  r["vocabulary_size"] = model.vocabulary.size();
  r["wall_time_s"] = seconds;
  out << r.dump(2) << "\n";
  err << "trained on " << (k_art + k_nl) << " lines, vocabulary " << model.vocabulary.size() << ", "
      << std::fixed << std::setprecision(2) << seconds << " s\n";
  return kExitOk;
}

std::string_view tag(const Prediction& p) { return p.blank ? "blank" : label_name(p.label); }

int cmd_predict(const std::string& model_path, const std::string& in, const std::string& format,
                std::ostream& out) {
  const LinearModel model = load_model(model_path);
  const auto lines = read_lines(in);
  const auto preds = predict(model, lines);
  std::string buf;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    buf += tag(preds[i]);
    if (format == "annotated") {
      buf += '\t';
      buf += lines[i];
    }
    buf += '\n';
  }
  out << buf;
  return kExitOk;
}

int cmd_filter(const std::string& model_path, const std::string& in, const std::string& keep,
               std::ostream& out) {
  const LinearModel model = load_model(model_path);
  const auto lines = read_lines(in);
  const auto preds = predict(model, lines);
  const Label wanted = parse_label(keep);
  std::vector<bool> kept(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) kept[i] = !preds[i].blank && preds[i].label == wanted;
  std::string buf;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    bool emit_line = kept[i];
    if (preds[i].blank) {
      emit_line = (i > 0 && kept[i - 1]) || (i + 1 < lines.size() && kept[i + 1]);
    }
    if (emit_line) {
      buf += lines[i];
      buf += '\n';
    }
  }
  out << buf;
  return kExitOk;
}

int cmd_evaluate(const std::string& model_path, const std::string& dataset, const std::string& report,
                 std::ostream& out) {
  const EvalReport r = evaluate_model(load_model(model_path), read_dataset(dataset));
  emit(report, report_json(r).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_baseline(const std::string& dataset, const std::string& mode, const std::string& report,
                 std::ostream& out) {
  const Dataset ds = read_dataset(dataset);
  const auto pred = baseline_predict(ds, mode == "document" ? BaselineMode::Document : BaselineMode::Line);
  std::vector<Label> truth;
  std::vector<double> scores;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    truth.push_back(ds.lines()[i].label);
    scores.push_back(pred[i] == Label::Artifact ? 1.0 : 0.0);
  }
  ordered_json j = report_json(evaluate(truth, pred, scores));
  j["mode"] = mode;
  emit(report, j.dump(2) + "\n", out);
  return kExitOk;
}

struct CurveArgs {
  std::string train;
  std::string eval;
  std::string report;
  LearningCurveConfig cfg;
  TrainConfig train_cfg;
};

int cmd_learning_curve(CurveArgs a, std::ostream& out) {
  const auto curve = learning_curve(read_dataset(a.train), read_dataset(a.eval), a.cfg, a.train_cfg);
  ordered_json arr = ordered_json::array();
  for (const auto& p : curve) {
    ordered_json j;
    j["fraction"] = p.fraction;
    j["train_lines"] = p.train_lines;
    j["roc_auc_mean"] = p.auc_mean;
    j["roc_auc_stddev"] = p.auc_stddev;
    j["f1_macro_mean"] = p.f1_mean;
    j["f1_macro_stddev"] = p.f1_stddev;
    j["roc_auc_scores"] = p.auc_scores;
    j["f1_macro_scores"] = p.f1_scores;
    arr.push_back(std::move(j));
  }
  emit(a.report, arr.dump(2) + "\n", out);
  return kExitOk;
}

struct BootstrapArgs {
  std::string dataset;
  std::string report;
  BootstrapConfig cfg;
  TrainConfig train_cfg;
};

int cmd_bootstrap(const BootstrapArgs& a, std::ostream& out) {
  const BootstrapResult r = bootstrap_eval(read_dataset(a.dataset), a.cfg, a.train_cfg);
  ordered_json j = report_json(r.report);
  j["roc_auc_ci_low"] = r.auc_ci.low;
  j["roc_auc_ci_high"] = r.auc_ci.high;
  j["roc_auc_ci_mean"] = r.auc_ci.mean;
  j["n_iterations"] = r.f1_scores.size();
  j["f1_macro_scores"] = r.f1_scores;
  j["roc_auc_scores"] = r.auc_scores;
  emit(a.report, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_kappa(const std::string& a, const std::string& b, std::ostream& out) {
  const auto la = read_label_file(a);
  const auto lb = read_label_file(b);
  if (la.size() != lb.size())
    throw Error("label files differ in length (" + std::to_string(la.size()) + " vs " +
                std::to_string(lb.size()) + ")");
  ordered_json j;
  j["kappa"] = cohen_kappa(la, lb);
  j["n_lines"] = la.size();
  out << j.dump() << "\n";
  return kExitOk;
}

struct FetchArgs {
  FetchOptions opts;
  std::set<std::string> labels = default_bug_labels();
  std::string out;
};

int cmd_fetch(FetchArgs a, std::ostream& out) {
  a.opts.labels = a.labels;
  a.opts.snapshot = a.out;
  if (const char* token = std::getenv(kTokenEnv)) a.opts.auth_token = token;
  const auto docs = fetch_issues(a.opts);
  ordered_json j;
  j["issues"] = docs.size();
  j["snapshot"] = a.out;
  out << j.dump(2) << "\n";
  return kExitOk;
}

void add_train_options(CLI::App* cmd, TrainConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--C", cfg.C, "Regularization trade-off")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--min-df", cfg.min_df, "Minimum document frequency of an n-gram")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separates natural language from pasted artifacts in bug reports, line by line.",
               "artifact-sieve"};
  app.require_subcommand(1);

  FetchArgs fetch;
  auto* c_fetch = app.add_subcommand("fetch", "Snapshot issues from a REST issue tracker");
  c_fetch->add_option("--endpoint", fetch.opts.endpoint, "Repository API URL")->required();
  c_fetch->add_option("--project", fetch.opts.project, "Project name stored with each issue")->required();
  c_fetch->add_option("--labels", fetch.labels, "Label filter (comma-separated or repeated)")->delimiter(',');
  c_fetch->add_option("--out", fetch.out, "Snapshot file (.jsonl)")->required();

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Build a labeled line dataset from Markdown sources");
  c_gen->add_option("--issues", gen.issues, "Issue export file or directory");
  c_gen->add_option("--docs", gen.docs, "Documentation file or directory");
  c_gen->add_option("--out", gen.out, "Dataset output (.jsonl)")->required();
  c_gen->add_flag("--balance", gen.balance, "Downsample the majority class");
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_option("--report", gen.report, "Write the summary JSON here as well");
  c_gen->add_option("--labels", gen.labels, "Issue labels to mine (default bug,defect,regression)")->delimiter(',');

  SplitArgs split;
  auto* c_split = app.add_subcommand("split", "Document-level train/test split of a dataset");
  c_split->add_option("--dataset", split.dataset)->required();
  c_split->add_option("--train-out", split.train_out)->required();
  c_split->add_option("--test-out", split.test_out)->required();
  c_split->add_option("--linked", split.linked, "File of document ids (one per line) that form the test side");
  c_split->add_option("--test-fraction", split.test_fraction, "Fraction of documents drawn for the test side");
  c_split->add_flag("--balance", split.balance, "Balance both sides after splitting");
  c_split->add_option("--seed", split.seed)->capture_default_str();

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Train a linear model on a dataset");
  c_train->add_option("--dataset", tr.dataset)->required();
  c_train->add_option("--out", tr.out, "Model file")->required();
  c_train->add_option("--fraction", tr.cfg.sample_fraction, "Stratified training sample fraction")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  add_train_options(c_train, tr.cfg);

  std::string model, in, format = "labels", keep = "nl";
  auto* c_predict = app.add_subcommand("predict", "Label every line of a text file");
  c_predict->add_option("--model", model)->required();
  c_predict->add_option("--in", in)->required();
  c_predict->add_option("--format", format)->capture_default_str()->check(CLI::IsMember({"labels", "annotated"}));

  auto* c_filter = app.add_subcommand("filter", "Print only the lines of one class");
  c_filter->add_option("--model", model)->required();
  c_filter->add_option("--in", in)->required();
  c_filter->add_option("--keep", keep)->capture_default_str()->check(CLI::IsMember({"nl", "artifact"}));

  std::string dataset, report, mode = "line";
  auto* c_eval = app.add_subcommand("evaluate", "Score a model against a labeled dataset");
  c_eval->add_option("--model", model)->required();
  c_eval->add_option("--dataset", dataset)->required();
  c_eval->add_option("--out", report, "Report file (stdout when omitted)");

  auto* c_base = app.add_subcommand("baseline", "Score the rule-only baselines against a dataset");
  c_base->add_option("--dataset", dataset)->required();
  c_base->add_option("--mode", mode)->capture_default_str()->check(CLI::IsMember({"line", "document"}));
  c_base->add_option("--out", report);

  CurveArgs curve;
  auto* c_curve = app.add_subcommand("learning-curve", "ROC-AUC and F1 versus training-set size");
  c_curve->add_option("--train", curve.train)->required();
  c_curve->add_option("--eval", curve.eval)->required();
  c_curve->add_option("--fractions", curve.cfg.fractions, "Ascending training fractions in (0, 1]")
      ->delimiter(',')
      ->capture_default_str();
  c_curve->add_option("--runs", curve.cfg.runs)->capture_default_str()->check(CLI::PositiveNumber);
  c_curve->add_option("--out", curve.report);
  add_train_options(c_curve, curve.train_cfg);
  c_curve->callback([&] { curve.cfg.seed = curve.train_cfg.seed; });

  BootstrapArgs boot;
  boot.train_cfg.sample_fraction = 1.0;
  auto* c_boot = app.add_subcommand("bootstrap", "Percentile bootstrap over repeated line-level splits");
  c_boot->add_option("--dataset", boot.dataset)->required();
  c_boot->add_option("--n", boot.cfg.n)->capture_default_str()->check(CLI::PositiveNumber);
  c_boot->add_option("--alpha", boot.cfg.alpha)->capture_default_str();
  c_boot->add_option("--split", boot.cfg.split)->capture_default_str();
  c_boot->add_option("--fraction", boot.train_cfg.sample_fraction, "Training sample fraction per iteration")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_boot->add_option("--out", boot.report);
  add_train_options(c_boot, boot.train_cfg);
  c_boot->callback([&] { boot.cfg.seed = boot.train_cfg.seed; });

  std::string file_a, file_b;
  auto* c_kappa = app.add_subcommand("kappa", "Cohen's kappa between two label files");
  c_kappa->add_option("--a", file_a)->required();
  c_kappa->add_option("--b", file_b)->required();

  std::vector<std::string> argv_store;
  argv_store.emplace_back("artifact-sieve");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDataError;
  }

  try {
    if (*c_fetch) return cmd_fetch(fetch, out);
    if (*c_gen) return cmd_generate(gen, out, err);
    if (*c_split) return cmd_split(split, out, err);
    if (*c_train) return cmd_train(tr, out, err);
    if (*c_predict) return cmd_predict(model, in, format, out);
    if (*c_filter) return cmd_filter(model, in, keep, out);
    if (*c_eval) return cmd_evaluate(model, dataset, report, out);
    if (*c_base) return cmd_baseline(dataset, mode, report, out);
    if (*c_curve) return cmd_learning_curve(curve, out);
    if (*c_boot) return cmd_bootstrap(boot, out);
    if (*c_kappa) return cmd_kappa(file_a, file_b, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitDataError;
}

}  // namespace sieve::cli
