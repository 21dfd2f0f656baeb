#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artifact_sieve/autolabel.hpp"
#include "artifact_sieve/corpus.hpp"

namespace sieve {

/// Rule-only classification of a single line: Markdown shape rules M2-M4
/// and filter banks P/X/J/L mark artifacts; everything else is natural
/// language.
Label classify_line_regex(std::string_view line);

struct BaselineLine {
  std::string text;
  Label label;
  bool blank = false;
};

/// Fence state is tracked over the whole document first; lines outside
/// fences fall back to classify_line_regex.
std::vector<BaselineLine> classify_document_regex(const Document& doc);

enum class BaselineMode { Line, Document };

/// Baseline predictions for every dataset line. In document mode the
/// documents are rebuilt from the dataset lines (grouped by doc_id and
/// ordered by line_no) so fence context is available.
std::vector<Label> baseline_predict(const Dataset& ds, BaselineMode mode);

}  // namespace sieve
