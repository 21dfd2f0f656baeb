#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/preprocess.hpp"

namespace sieve {

/// N-gram -> feature index map. Indices follow lexicographic n-gram order.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// `terms` must be sorted and unique.
  Vocabulary(std::vector<std::string> terms, int n_min, int n_max, int min_df);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  int min_df() const { return min_df_; }

  /// Index of the n-gram, or -1.
  std::int64_t find(std::string_view ngram) const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
  int n_min_ = 1;
  int n_max_ = 3;
  int min_df_ = 1;
};

struct FeatureEntry {
  std::uint32_t index;
  std::uint32_t count;
  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

/// Sparse count vector; entries sorted by strictly increasing index.
struct FeatureVector {
  std::vector<FeatureEntry> entries;
  std::size_t dimension = 0;
};

Vocabulary build_vocabulary(const Dataset& ds, int n_min = 1, int n_max = 3, int min_df = 1);
Vocabulary build_vocabulary(std::span<const std::string> lines, int n_min = 1, int n_max = 3,
                            int min_df = 1);

FeatureVector vectorize(const TokenSequence& seq, const Vocabulary& vocab);

}  // namespace sieve
