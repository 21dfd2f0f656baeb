#include "artifact_sieve/preprocess.hpp"

#include <algorithm>
#include <array>

namespace sieve {

namespace {

constexpr std::string_view kTab = "Jtabulator";
constexpr std::string_view kDoubleSpace = "Jdoublespace";
constexpr std::string_view kCamel = "Jcamelcased";
constexpr std::string_view kUnderscored = "Junderscored";
constexpr std::string_view kNumber = "Jnumber";
constexpr std::string_view kOther = "Jother";
// content words spelled like a reserved token are renamed so the
// boundary tokens stay unique
constexpr std::string_view kReserved = "Jreserved";

struct CharToken {
  char c;
  std::string_view token;
};

constexpr std::array<CharToken, 32> kCharTokens = {{
    {'(', "Jroundbracketopen"},  {')', "Jroundbracketclose"}, {'{', "Jcurlybracketopen"},
    {'}', "Jcurlybracketclose"}, {'[', "Jsquarebracketopen"}, {']', "Jsquarebracketclose"},
    {'<', "Janglebracketopen"},  {'>', "Janglebracketclose"}, {';', "Jsemicolon"},
    {':', "Jcolon"},             {',', "Jcomma"},             {'.', "Jdot"},
    {'?', "Jquestionmark"},      {'!', "Jexclamation"},       {'"', "Jdoublequote"},
    {'\'', "Jsinglequote"},      {'`', "Jbacktick"},          {'/', "Jslash"},
    {'\\', "Jbackslash"},        {'|', "Jpipe"},              {'&', "Jampersand"},
    {'@', "Jat"},                {'#', "Jhash"},              {'$', "Jdollar"},
    {'%', "Jpercent"},           {'^', "Jcaret"},             {'*', "Jasterisk"},
    {'+', "Jplus"},              {'-', "Jminus"},             {'=', "Jequals"},
    {'_', "Junderscore"},        {'~', "Jtilde"},
}};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower_or_digit(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }
bool is_alnum(char c) { return is_upper(c) || is_lower_or_digit(c); }

// Full match of ([A-Z]?[a-z0-9]+)([A-Z][a-z0-9]*)+ over an alphanumeric run.
bool is_camel_case(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && is_upper(s[i])) ++i;
  const std::size_t head = i;
  while (i < s.size() && is_lower_or_digit(s[i])) ++i;
  if (i == head) return false;
  return i < s.size() && is_upper(s[i]);
}

bool is_reserved(std::string_view word) {
  if (word.empty() || word[0] != 'J') return false;
  static constexpr std::array<std::string_view, 9> kNamed = {
      kLineStart, kLineEnd, kTab, kDoubleSpace, kCamel, kUnderscored, kNumber, kOther, kReserved};
  if (std::find(kNamed.begin(), kNamed.end(), word) != kNamed.end()) return true;
  return std::any_of(kCharTokens.begin(), kCharTokens.end(),
                     [&](const CharToken& t) { return t.token == word; });
}

std::size_t utf8_length(unsigned char lead) {
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  if (lead >= 0xE0) return lead <= 0xEF ? 3 : 1;
  if (lead >= 0xC2) return 2;
  return 1;
}

class Tokenizer {
 public:
  explicit Tokenizer(std::vector<std::string>& out) : out_(out) {}

  void word(std::string_view w) {
    std::size_t i = 0;
    while (i < w.size()) {
      const char c = w[i];
      const auto uc = static_cast<unsigned char>(c);
      if (is_alnum(c) || c == '_') {
        std::size_t j = i;
        while (j < w.size() && (is_alnum(w[j]) || w[j] == '_')) ++j;
        identifier(w.substr(i, j - i));
        i = j;
      } else if (uc >= 0x80) {
        out_.emplace_back(kOther);
        i += std::min(utf8_length(uc), w.size() - i);
      } else {
        out_.emplace_back(char_token(c));
        ++i;
      }
    }
  }

 private:
  void identifier(std::string_view run) {
    std::size_t lead = 0;
    while (lead < run.size() && run[lead] == '_') ++lead;
    std::size_t trail = 0;
    while (trail < run.size() - lead && run[run.size() - 1 - trail] == '_') ++trail;
    for (std::size_t k = 0; k < lead; ++k) out_.emplace_back(char_token('_'));
    const std::string_view core = run.substr(lead, run.size() - lead - trail);
    if (!core.empty()) out_.emplace_back(shape(core));
    for (std::size_t k = 0; k < trail; ++k) out_.emplace_back(char_token('_'));
  }

  static std::string_view shape(std::string_view core) {
    if (core.find('_') != std::string_view::npos) return kUnderscored;
    if (is_camel_case(core)) return kCamel;
    if (std::all_of(core.begin(), core.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return kNumber;
    if (is_reserved(core)) return kReserved;
    return core;
  }

  std::vector<std::string>& out_;
};

}  // namespace

std::string_view char_token(char c) {
  for (const auto& t : kCharTokens) {
    if (t.c == c) return t.token;
  }
  return kOther;
}

TokenSequence tokenize_line(std::string_view text) {
  TokenSequence seq;
  auto& out = seq.tokens;
  out.reserve(text.size() / 3 + 2);
  out.emplace_back(kLineStart);
  Tokenizer tok(out);
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ') {
      std::size_t j = i;
      while (j < text.size() && text[j] == ' ') ++j;
      if (j - i >= 2) out.emplace_back(kDoubleSpace);
      i = j;
    } else if (c == '\t') {
      out.emplace_back(kTab);
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
      tok.word(text.substr(i, j - i));
      i = j;
    }
  }
  out.emplace_back(kLineEnd);
  return seq;
}

std::vector<std::string> ngrams(const TokenSequence& seq, int n_min, int n_max) {
  std::vector<std::string> out;
  const auto& t = seq.tokens;
  for (int n = std::max(n_min, 1); n <= n_max; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (width > t.size()) break;
    for (std::size_t i = 0; i + width <= t.size(); ++i) {
      std::string g = t[i];
      for (std::size_t k = 1; k < width; ++k) {
        g += ' ';
        g += t[i + k];
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace sieve
