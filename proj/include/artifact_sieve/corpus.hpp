#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sieve {

enum class DocumentKind { IssueTicket, DocumentationFile };

struct Document {
  std::string id;
  std::string body;
  DocumentKind kind = DocumentKind::IssueTicket;
  std::string project;
  std::set<std::string> labels;  // always empty for documentation files
};

struct RawLine {
  std::string doc_id;
  std::size_t line_no = 0;
  std::string text;
};

/// Collects non-fatal problems (skipped records, duplicates). When no sink
/// is given, warnings go to stderr.
using Warnings = std::vector<std::string>;

/// Loads issue exports (a .jsonl file or a directory of them) or Markdown
/// documentation (a .md file or a directory tree scanned for *.md).
/// Files are visited in lexicographic path order.
std::vector<Document> load_documents(const std::filesystem::path& path, DocumentKind kind,
                                     Warnings* warnings = nullptr);

/// Parses issue export records from a JSON-Lines stream already in memory.
/// `source` is only used in warning text.
std::vector<Document> parse_issue_export(std::string_view content, std::string_view source,
                                         Warnings* warnings = nullptr);

/// Serializes issue documents in the export format (one record per line).
std::string format_issue_export(std::span<const Document> docs);
void write_issue_export(const std::filesystem::path& path, std::span<const Document> docs);

/// Keeps issues whose label set intersects `wanted`; documentation files
/// always pass.
std::vector<Document> filter_by_labels(std::span<const Document> docs,
                                       const std::set<std::string>& wanted);

/// Splits on LF, CRLF and CR. A trailing terminator does not start a new line.
std::vector<RawLine> split_lines(const Document& doc);
std::vector<std::string> split_text_lines(std::string_view body);

/// The labels the mining pipeline looks for by default.
std::set<std::string> default_bug_labels();

}  // namespace sieve
