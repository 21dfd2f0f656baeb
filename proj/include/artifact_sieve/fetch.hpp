#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "artifact_sieve/corpus.hpp"

namespace sieve {

struct FetchOptions {
  std::string endpoint;  // e.g. https://api.github.com/repos/owner/name
  std::string project;
  std::set<std::string> labels;
  std::optional<std::string> auth_token;
  int max_retries = 3;
  int per_page = 100;
  /// Where the offline snapshot is written; empty skips the snapshot.
  std::filesystem::path snapshot;
};

/// Pulls every page of `{endpoint}/issues`, maps issues to documents and
/// writes the snapshot in the issue export format. Pull requests are skipped;
/// the label filter is re-checked on the client.
std::vector<Document> fetch_issues(const FetchOptions& options);

}  // namespace sieve
