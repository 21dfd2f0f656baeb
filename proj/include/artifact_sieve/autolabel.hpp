#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artifact_sieve/corpus.hpp"

namespace sieve {

enum class Label { NaturalLanguage, Artifact };
enum class Provenance { MarkdownSplit, NoiseFilter, Manual };

std::string_view label_name(Label label);  // "nl" | "artifact"
Label parse_label(std::string_view name);  // throws Error on anything else
std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

struct LabeledLine {
  std::string text;
  Label label = Label::NaturalLanguage;
  std::string doc_id;
  std::size_t line_no = 0;
  Provenance provenance = Provenance::MarkdownSplit;

  friend bool operator==(const LabeledLine&, const LabeledLine&) = default;
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<LabeledLine> lines);

  void push_back(LabeledLine line);

  const std::vector<LabeledLine>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }
  std::size_t count(Label label) const {
    return label == Label::Artifact ? n_artifact_ : n_natural_;
  }

 private:
  std::vector<LabeledLine> lines_;
  std::size_t n_artifact_ = 0;
  std::size_t n_natural_ = 0;
};

struct SplitReport {
  std::size_t n_artifact = 0;
  std::size_t n_natural = 0;
  std::size_t n_discarded = 0;
  std::size_t n_blank = 0;

  std::size_t total() const { return n_artifact + n_natural + n_discarded + n_blank; }
  SplitReport& operator+=(const SplitReport& other);
};

struct MarkdownSplit {
  std::vector<LabeledLine> artifact;
  std::vector<LabeledLine> natural;
  SplitReport report;
};

/// Separates a Markdown document into artifact lines (fenced and indented
/// code, images, links, URLs, tables) and natural-language candidates.
/// Blockquote lines are discarded.
MarkdownSplit split_markdown(const Document& doc);

struct NoiseFilterResult {
  std::vector<LabeledLine> natural;
  std::vector<LabeledLine> reclassified;  // label Artifact, provenance NoiseFilter
  std::vector<LabeledLine> discarded;
  std::map<std::string, std::size_t> hits;  // rule id -> matched lines
};

NoiseFilterResult apply_noise_filters(std::span<const LabeledLine> candidates);

struct BuildStats {
  std::size_t documents_seen = 0;
  std::size_t documents_used = 0;
  SplitReport split;
  std::size_t n_reclassified = 0;
  std::size_t n_filter_discarded = 0;
  std::map<std::string, std::size_t> filter_hits;
};

/// True when any line of the body is a fence delimiter.
bool has_fenced_block(std::string_view body);

/// Labeled lines from every contributing document: issues only when they
/// contain a fenced block, documentation files always. Lines keep document
/// order and line order.
Dataset build_dataset(std::span<const Document> docs, BuildStats* stats = nullptr);

/// Downsamples the majority class without replacement. Survivors keep
/// their relative order.
Dataset balance(const Dataset& ds, std::uint64_t seed);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

/// Document-level split: lines of documents satisfying `in_test` go to test.
TrainTestSplit split_train_test(const Dataset& ds,
                                const std::function<bool(std::string_view)>& in_test);

/// Picks round(fraction * #documents) document ids for the test side.
std::vector<std::string> choose_test_documents(const Dataset& ds, double fraction,
                                               std::uint64_t seed);

/// JSON-Lines dataset files.
std::string format_dataset(const Dataset& ds);
void write_dataset(const std::filesystem::path& path, const Dataset& ds);
Dataset parse_dataset(std::string_view content, std::string_view source);
Dataset read_dataset(const std::filesystem::path& path);

}  // namespace sieve
