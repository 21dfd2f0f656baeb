#pragma once

#include <cstddef>
#include <optional>
#include <regex>
#include <span>
#include <string_view>

namespace sieve::rules {

/// Bumped whenever an expression in the table changes meaning.
inline constexpr int kTableVersion = 1;

enum class Bank {
  Markdown,       // line-shape rules used when splitting Markdown
  Prompt,         // shell prompts -> artifact
  Structured,     // JSON / XML -> artifact
  Java,           // Java source and stack frames -> artifact
  Log,            // log output -> artifact
  Discard,        // indistinguishable formats -> dropped
};

struct Rule {
  std::string_view id;       // stable identifier, e.g. "J4"
  Bank bank;
  std::string_view intent;   // one-line description
  std::string_view pattern;  // ECMAScript regex
};

/// Markdown line rules, by id: "M1" fence delimiter, "M2" indented code,
/// "M3a" image, "M3b" link, "M3c" bare URL, "M4a" table row,
/// "M4b" table separator, "M5" blockquote.
std::span<const Rule> markdown_rules();

/// Noise filter banks in evaluation order (P, X, J, L, D).
std::span<const Rule> filter_rules();

/// Compiled form of a rule id from either table. Throws on unknown ids.
const std::regex& compiled(std::string_view id);

bool matches(std::string_view id, std::string_view line);

/// First filter rule matching the line, or nullopt.
const Rule* first_filter_match(std::string_view line);

/// First rule among M2-M4 (line-shape artifact rules) matching the line.
const Rule* markdown_artifact_match(std::string_view line);

bool is_fence_delimiter(std::string_view line);
bool is_blockquote(std::string_view line);

}  // namespace sieve::rules
