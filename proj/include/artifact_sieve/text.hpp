#pragma once

#include <string>
#include <string_view>

namespace sieve {

/// Replaces every byte that is not part of a well-formed UTF-8 sequence
/// with U+FFFD. Valid input is returned unchanged.
std::string sanitize_utf8(std::string_view bytes);

/// True when the line holds only spaces, tabs and other ASCII whitespace.
bool is_blank(std::string_view line);

}  // namespace sieve
