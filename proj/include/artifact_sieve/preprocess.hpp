#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sieve {

inline constexpr std::string_view kLineStart = "Jlinestart";
inline constexpr std::string_view kLineEnd = "Jlineend";

/// Tokens of one line, framed by Jlinestart ... Jlineend.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
};

/// Named token for a single non-alphanumeric ASCII character, or "Jother"
/// for anything else that is not a letter or digit.
std::string_view char_token(char c);

/// Turns a line into the token alphabet:
///  1. tabs -> Jtabulator, runs of two or more spaces -> Jdoublespace
///  2. identifier runs -> Jcamelcased / Junderscored / Jnumber by shape
///  3. remaining punctuation -> its named token, non-ASCII -> Jother
///  4. boundary tokens around the result
/// Case is preserved.
TokenSequence tokenize_line(std::string_view text);

/// Contiguous n-grams: all unigrams first (in position order), then bigrams,
/// and so on up to n_max. Tokens are joined with a single space.
std::vector<std::string> ngrams(const TokenSequence& seq, int n_min, int n_max);

}  // namespace sieve
