#pragma once

#include <stdexcept>
#include <string>

namespace sieve {

/// Raised for unusable input: unreadable paths, schema violations,
/// degenerate datasets. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sieve
