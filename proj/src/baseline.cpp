#include "artifact_sieve/baseline.hpp"

#include <algorithm>
#include <map>

#include "artifact_sieve/rules.hpp"
#include "artifact_sieve/text.hpp"

namespace sieve {

namespace {

// Fence context first, single-line rules second.
class DocumentClassifier {
 public:
  Label next(std::string_view line) {
    if (rules::is_fence_delimiter(line)) {
      in_fence_ = !in_fence_;
      return Label::Artifact;
    }
    return in_fence_ ? Label::Artifact : classify_line_regex(line);
  }

 private:
  bool in_fence_ = false;
};

}  // namespace

Label classify_line_regex(std::string_view line) {
  if (is_blank(line)) return Label::NaturalLanguage;
  if (rules::markdown_artifact_match(line)) return Label::Artifact;
  const rules::Rule* hit = rules::first_filter_match(line);
  if (hit && hit->bank != rules::Bank::Discard) return Label::Artifact;
  return Label::NaturalLanguage;
}

std::vector<BaselineLine> classify_document_regex(const Document& doc) {
  std::vector<BaselineLine> out;
  DocumentClassifier cls;
  for (auto& raw : split_lines(doc)) {
    if (is_blank(raw.text)) {
      out.push_back({std::move(raw.text), Label::NaturalLanguage, true});
      continue;
    }
    const Label label = cls.next(raw.text);
    out.push_back({std::move(raw.text), label, false});
  }
  return out;
}

std::vector<Label> baseline_predict(const Dataset& ds, BaselineMode mode) {
  const auto& lines = ds.lines();
  std::vector<Label> out(lines.size(), Label::NaturalLanguage);
  if (mode == BaselineMode::Line) {
    for (std::size_t i = 0; i < lines.size(); ++i) out[i] = classify_line_regex(lines[i].text);
    return out;
  }
  std::map<std::string_view, std::vector<std::size_t>> by_doc;
  for (std::size_t i = 0; i < lines.size(); ++i) by_doc[lines[i].doc_id].push_back(i);
  for (auto& [id, idx] : by_doc) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return lines[a].line_no < lines[b].line_no; });
    DocumentClassifier cls;
    for (std::size_t i : idx) out[i] = cls.next(lines[i].text);
  }
  return out;
}

}  // namespace sieve
