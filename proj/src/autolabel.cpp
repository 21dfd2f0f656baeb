#include "artifact_sieve/autolabel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "artifact_sieve/error.hpp"
#include "artifact_sieve/rng.hpp"
#include "artifact_sieve/rules.hpp"
#include "artifact_sieve/text.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace sieve {

std::string_view label_name(Label label) {
  return label == Label::Artifact ? "artifact" : "nl";
}

Label parse_label(std::string_view name) {
  if (name == "artifact") return Label::Artifact;
  if (name == "nl") return Label::NaturalLanguage;
  throw Error("unknown label \"" + std::string(name) + "\" (expected nl or artifact)");
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::MarkdownSplit: return "markdown";
    case Provenance::NoiseFilter: return "filter";
    case Provenance::Manual: return "manual";
  }
  return "markdown";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "markdown") return Provenance::MarkdownSplit;
  if (name == "filter") return Provenance::NoiseFilter;
  if (name == "manual") return Provenance::Manual;
  throw Error("unknown provenance \"" + std::string(name) + "\"");
}

Dataset::Dataset(std::vector<LabeledLine> lines) {
  lines_.reserve(lines.size());
  for (auto& l : lines) push_back(std::move(l));
}

void Dataset::push_back(LabeledLine line) {
  if (line.text.find_first_of("\r\n") != std::string::npos)
    throw Error("dataset line contains a line terminator (" + line.doc_id + ":" +
                std::to_string(line.line_no) + ")");
  if (is_blank(line.text))
    throw Error("blank line in dataset (" + line.doc_id + ":" + std::to_string(line.line_no) + ")");
  (line.label == Label::Artifact ? n_artifact_ : n_natural_)++;
  lines_.push_back(std::move(line));
}

SplitReport& SplitReport::operator+=(const SplitReport& other) {
  n_artifact += other.n_artifact;
  n_natural += other.n_natural;
  n_discarded += other.n_discarded;
  n_blank += other.n_blank;
  return *this;
}

MarkdownSplit split_markdown(const Document& doc) {
  MarkdownSplit out;
  bool in_fence = false;
  for (auto& raw : split_lines(doc)) {
    if (is_blank(raw.text)) {
      ++out.report.n_blank;
      continue;
    }
    auto as = [&](Label label) {
      return LabeledLine{std::move(raw.text), label, doc.id, raw.line_no, Provenance::MarkdownSplit};
    };
    if (rules::is_fence_delimiter(raw.text)) {
      in_fence = !in_fence;
      out.artifact.push_back(as(Label::Artifact));
    } else if (in_fence || rules::markdown_artifact_match(raw.text)) {
      out.artifact.push_back(as(Label::Artifact));
    } else if (rules::is_blockquote(raw.text)) {
      ++out.report.n_discarded;
    } else {
      out.natural.push_back(as(Label::NaturalLanguage));
    }
  }
  out.report.n_artifact = out.artifact.size();
  out.report.n_natural = out.natural.size();
  return out;
}

NoiseFilterResult apply_noise_filters(std::span<const LabeledLine> candidates) {
  NoiseFilterResult out;
  for (const auto& line : candidates) {
    const rules::Rule* hit = rules::first_filter_match(line.text);
    if (!hit) {
      out.natural.push_back(line);
      continue;
    }
    ++out.hits[std::string(hit->id)];
    if (hit->bank == rules::Bank::Discard) {
      out.discarded.push_back(line);
    } else {
      LabeledLine moved = line;
      moved.label = Label::Artifact;
      moved.provenance = Provenance::NoiseFilter;
      out.reclassified.push_back(std::move(moved));
    }
  }
  return out;
}

bool has_fenced_block(std::string_view body) {
  for (const auto& line : split_text_lines(body)) {
    if (rules::is_fence_delimiter(line)) return true;
  }
  return false;
}

Dataset build_dataset(std::span<const Document> docs, BuildStats* stats) {
  Dataset ds;
  BuildStats local;
  for (const auto& doc : docs) {
    ++local.documents_seen;
    if (doc.kind == DocumentKind::IssueTicket && !has_fenced_block(doc.body)) continue;
    ++local.documents_used;

    MarkdownSplit split = split_markdown(doc);
    NoiseFilterResult filtered = apply_noise_filters(split.natural);
    local.split += split.report;
    local.n_reclassified += filtered.reclassified.size();
    local.n_filter_discarded += filtered.discarded.size();
    for (const auto& [id, n] : filtered.hits) local.filter_hits[id] += n;

    std::vector<LabeledLine> lines = std::move(split.artifact);
    std::move(filtered.reclassified.begin(), filtered.reclassified.end(), std::back_inserter(lines));
    std::move(filtered.natural.begin(), filtered.natural.end(), std::back_inserter(lines));
    std::sort(lines.begin(), lines.end(),
              [](const LabeledLine& a, const LabeledLine& b) { return a.line_no < b.line_no; });
    for (auto& l : lines) ds.push_back(std::move(l));
  }
  if (stats) *stats = std::move(local);
  return ds;
}

Dataset balance(const Dataset& ds, std::uint64_t seed) {
  const std::size_t n_art = ds.count(Label::Artifact);
  const std::size_t n_nl = ds.count(Label::NaturalLanguage);
  if (n_art == 0 || n_nl == 0) throw Error("cannot balance single-class dataset");

  const Label majority = n_art > n_nl ? Label::Artifact : Label::NaturalLanguage;
  const std::size_t keep = std::min(n_art, n_nl);

  std::vector<std::size_t> majority_pos;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.lines()[i].label == majority) majority_pos.push_back(i);
  }
  std::vector<bool> kept(ds.size(), true);
  for (std::size_t i : majority_pos) kept[i] = false;
  Rng rng(seed);
  for (std::size_t k : rng.sample_indices(majority_pos.size(), keep)) kept[majority_pos[k]] = true;

  Dataset out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (kept[i]) out.push_back(ds.lines()[i]);
  }
  return out;
}

TrainTestSplit split_train_test(const Dataset& ds,
                                const std::function<bool(std::string_view)>& in_test) {
  TrainTestSplit out;
  for (const auto& line : ds.lines()) {
    (in_test(line.doc_id) ? out.test : out.train).push_back(line);
  }
  return out;
}

std::vector<std::string> choose_test_documents(const Dataset& ds, double fraction,
                                               std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error("test fraction must be in [0, 1]");
  std::set<std::string> unique;
  for (const auto& l : ds.lines()) unique.insert(l.doc_id);
  std::vector<std::string> ids(unique.begin(), unique.end());
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ids.size())));
  Rng rng(seed);
  std::vector<std::string> chosen;
  for (std::size_t i : rng.sample_indices(ids.size(), k)) chosen.push_back(ids[i]);
  return chosen;
}

std::string format_dataset(const Dataset& ds) {
  std::string out;
  for (const auto& l : ds.lines()) {
    ordered_json j;
    j["text"] = l.text;
    j["label"] = label_name(l.label);
    j["doc_id"] = l.doc_id;
    j["line_no"] = l.line_no;
    j["provenance"] = provenance_name(l.provenance);
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_dataset(const fs::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << format_dataset(ds);
  if (!out) throw Error("cannot write " + path.string());
}

Dataset parse_dataset(std::string_view content, std::string_view source) {
  Dataset ds;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view raw = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (is_blank(raw)) continue;
    auto fail = [&](const std::string& why) {
      return Error(std::string(source) + ":" + std::to_string(line_no) + ": " + why);
    };
    ordered_json j = ordered_json::parse(sanitize_utf8(raw), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw fail("not a JSON object");
    try {
      LabeledLine l;
      l.text = j.at("text").get<std::string>();
      l.label = parse_label(j.at("label").get<std::string>());
      l.doc_id = j.value("doc_id", std::string{});
      l.line_no = j.value("line_no", std::size_t{0});
      l.provenance = parse_provenance(j.value("provenance", std::string{"manual"}));
      ds.push_back(std::move(l));
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  return ds;
}

Dataset read_dataset(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path.string());
}

}  // namespace sieve
