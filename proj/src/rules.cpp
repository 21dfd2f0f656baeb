// Expression table for Markdown splitting, noise filtering and the regex
// baselines. Any change to a pattern's meaning bumps kTableVersion.

#include "artifact_sieve/rules.hpp"

#include <array>
#include <string>
#include <unordered_map>

#include "artifact_sieve/error.hpp"

namespace sieve::rules {

namespace {

// Longer lines skip regex evaluation entirely: libstdc++'s backtracking
// matcher recurses per character and overflows the stack on huge inputs.
constexpr std::size_t kMaxRegexLine = 4096;

constexpr std::array kMarkdown = {
    Rule{"M1", Bank::Markdown, "fence delimiter (``` or ~~~, optional info string)",
         R"(^[ \t]*(?:`{3,}|~{3,})[ \t]*[\w+#.-]*[ \t]*$)"},
    Rule{"M2", Bank::Markdown, "indented code (4 spaces or a tab)", R"(^(?: {4}|\t))"},
    Rule{"M3a", Bank::Markdown, "standalone embedded image", R"(^\s*!\[[^\]]*\]\([^)]*\)\s*$)"},
    Rule{"M3b", Bank::Markdown, "standalone Markdown link", R"(^\s*\[[^\]]*\]\([^)]*\)\s*$)"},
    Rule{"M3c", Bank::Markdown, "bare URL", R"(^\s*<?[A-Za-z][A-Za-z0-9+.-]*://\S+>?\s*$)"},
    Rule{"M4a", Bank::Markdown, "table row", R"(^\s*\|.*\|\s*$)"},
    Rule{"M4b", Bank::Markdown, "table separator", R"(^(?=[^|]*\|)(?=[^-]*-)[ \t|:-]+$)"},
    Rule{"M5", Bank::Markdown, "blockquote", R"(^\s*>)"},
};

constexpr std::array kFilters = {
    // prompts
    Rule{"P1", Bank::Prompt, "Unix shell prompt",
         R"(^\s*(?:\$ +\S|[\w.-]+@[\w.-]+(?::\S*)?\s*[$#] *\S|# +(?:sudo|apt-get|apt|yum|cd|ls|cat|echo|export|mvn|gradle|java|javac|git|docker|kubectl|npm|pip|curl|wget|chmod|mkdir|rm|cp|mv|tar|make|ps|kill|systemctl|service)\b))"},
    Rule{"P2", Bank::Prompt, "Windows prompt", R"(^\s*(?:PS +)?[A-Za-z]:\\[^<>|"]*>)"},
    // json / xml
    Rule{"X1", Bank::Structured, "JSON key/value or bracket line",
         R"(^\s*[{\[]*\s*"[^"]+"\s*:\s*(?:["{\[]|-?\d|true\b|false\b|null\b)|^\s*[{}\[\]]+\s*,?\s*$)"},
    Rule{"X2", Bank::Structured, "XML/HTML opening tag", R"(^\s*<[A-Za-z!?][^>]*>)"},
    Rule{"X3", Bank::Structured, "XML/HTML closing or self-closing tag",
         R"(^\s*</[A-Za-z][\w:.-]*\s*>|/>\s*$)"},
    // java
    Rule{"J1", Bank::Java, "statement ending in a semicolon", R"(;\s*(?://.*)?$)"},
    Rule{"J2", Bank::Java, "declaration or block opening/closing brace",
         R"(^\s*(?:(?:public|private|protected|static|final|abstract|synchronized|native|default|class|interface|enum|record|if|else|for|while|try|catch|finally|switch|do)\b.*|.*\)\s*(?:throws\s+[\w.,\s]+)?)\{\s*$|^\s*\})"},
    Rule{"J3", Bank::Java, "import or package statement",
         R"(^\s*(?:import|package)\s+(?:static\s+)?[\w.]+(?:\.\*)?\s*;?\s*$)"},
    Rule{"J4", Bank::Java, "stack frame",
         R"(^\s*at\s+[\w$.<>/-]+\((?:[\w$.-]+\.(?:java|kt|scala|groovy):\d+|Native Method|Unknown Source)\))"},
    Rule{"J5", Bank::Java, "annotation-only line", R"(^\s*@[A-Z]\w*(?:\([^)]*\))?\s*$)"},
    // logging
    Rule{"L1", Bank::Log, "timestamp-prefixed line",
         R"(^\s*\[?\d{4}-\d{2}-\d{2}[ T]\d{2}:\d{2}|^\s*\[?\d{2}:\d{2}:\d{2}(?:[.,]\d{1,6})?\]?\s)"},
    Rule{"L2", Bank::Log, "log level token with separator",
         R"((?:^|[\s\[])(?:TRACE|DEBUG|INFO|WARN|WARNING|ERROR|FATAL|SEVERE)(?:\]|:|\s+\[|\s+-\s|\s*\|))"},
    Rule{"L3", Bank::Log, "logger path followed by ' - '", R"([a-z][\w$]*(?:\.[\w$]+){2,}\s+-\s)"},
    Rule{"L4", Bank::Log, "exception header or trace continuation",
         R"(^\s*(?:Exception in thread|Caused by:|Suppressed:|\.\.\. \d+ (?:more|common frames omitted))|^\s*(?:[\w$]+\.)*[\w$]*(?:Exception|Error|Throwable)(?::\s|:$|\s*$))"},
    // ambiguous
    Rule{"D1", Bank::Discard, "environment key/value with version number",
         R"(^\s*(?:[-*+]\s+)?(?:\*\*)?(?:OS|Operating System|Java|JDK|JRE|JVM|Version|Platform|Browser|Maven|Gradle|Kotlin|Spring Boot|IDE)(?: [Vv]ersion)?(?:\*\*)?\s*:(?:\*\*)?.*\d)"},
    Rule{"D2", Bank::Discard, "no letters or digits at all", R"(^[^A-Za-z0-9]*$)"},
};

struct CompiledTable {
  std::unordered_map<std::string_view, std::regex> by_id;

  CompiledTable() {
    for (const auto& r : kMarkdown) add(r);
    for (const auto& r : kFilters) add(r);
  }

  void add(const Rule& r) {
    by_id.emplace(r.id, std::regex(std::string(r.pattern), std::regex::ECMAScript | std::regex::optimize));
  }
};

const CompiledTable& table() {
  static const CompiledTable t;
  return t;
}

bool search(const std::regex& re, std::string_view line) {
  if (line.size() > kMaxRegexLine) return false;
  return std::regex_search(line.begin(), line.end(), re);
}

}  // namespace

std::span<const Rule> markdown_rules() { return kMarkdown; }
std::span<const Rule> filter_rules() { return kFilters; }

const std::regex& compiled(std::string_view id) {
  const auto& t = table();
  auto it = t.by_id.find(id);
  if (it == t.by_id.end()) throw Error("unknown rule id " + std::string(id));
  return it->second;
}

bool matches(std::string_view id, std::string_view line) { return search(compiled(id), line); }

const Rule* first_filter_match(std::string_view line) {
  for (const auto& r : kFilters) {
    if (search(compiled(r.id), line)) return &r;
  }
  return nullptr;
}

const Rule* markdown_artifact_match(std::string_view line) {
  for (const auto& r : kMarkdown) {
    if (r.id == "M1" || r.id == "M5") continue;
    if (search(compiled(r.id), line)) return &r;
  }
  return nullptr;
}

bool is_fence_delimiter(std::string_view line) { return matches("M1", line); }
bool is_blockquote(std::string_view line) { return matches("M5", line); }

}  // namespace sieve::rules
