#include "artifact_sieve/features.hpp"

#include <algorithm>
#include <unordered_set>

#include "artifact_sieve/error.hpp"

namespace sieve {

Vocabulary::Vocabulary(std::vector<std::string> terms, int n_min, int n_max, int min_df)
    : terms_(std::move(terms)), n_min_(n_min), n_max_(n_max), min_df_(min_df) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i]))
      throw Error("vocabulary terms must be sorted and unique");
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

std::int64_t Vocabulary::find(std::string_view ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(std::span<const std::string> lines, int n_min, int n_max, int min_df) {
  if (lines.empty()) throw Error("cannot build a vocabulary from an empty dataset");
  if (n_min < 1 || n_max < n_min) throw Error("n-gram range must satisfy 1 <= n_min <= n_max");
  if (min_df < 1) throw Error("min_df must be at least 1");

  std::unordered_map<std::string, int> df;
  std::unordered_set<std::string> seen;
  for (const auto& line : lines) {
    seen.clear();
    for (auto& g : ngrams(tokenize_line(line), n_min, n_max)) {
      if (seen.insert(g).second) ++df[std::move(g)];
    }
  }
  std::vector<std::string> terms;
  for (auto& [term, count] : df) {
    if (count >= min_df) terms.push_back(term);
  }
  std::sort(terms.begin(), terms.end());
  return Vocabulary(std::move(terms), n_min, n_max, min_df);
}

Vocabulary build_vocabulary(const Dataset& ds, int n_min, int n_max, int min_df) {
  std::vector<std::string> texts;
  texts.reserve(ds.size());
  for (const auto& l : ds.lines()) texts.push_back(l.text);
  return build_vocabulary(texts, n_min, n_max, min_df);
}

FeatureVector vectorize(const TokenSequence& seq, const Vocabulary& vocab) {
  FeatureVector v;
  v.dimension = vocab.size();
  std::vector<std::uint32_t> hits;
  for (const auto& g : ngrams(seq, vocab.n_min(), vocab.n_max())) {
    const std::int64_t idx = vocab.find(g);
    if (idx >= 0) hits.push_back(static_cast<std::uint32_t>(idx));
  }
  std::sort(hits.begin(), hits.end());
  for (std::uint32_t idx : hits) {
    if (!v.entries.empty() && v.entries.back().index == idx) {
      ++v.entries.back().count;
    } else {
      v.entries.push_back({idx, 1});
    }
  }
  return v;
}

}  // namespace sieve
