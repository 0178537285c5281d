#pragma once

#include <stdexcept>
#include <string>

namespace halftree {

/// Thrown when an internal consistency check fails. The checks encode
/// identities the algorithms must maintain; a failure means either a bug or
/// an input violating a documented hypothesis.
struct CheckFailure : std::logic_error {
  using std::logic_error::logic_error;
};

/// Thrown on malformed textual input (matrix or connection files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] void check_failed(const char* file, int line, const std::string& what);
}

}  // namespace halftree

// Always on; these checks are part of the verification surface.
#define HALFTREE_CHECK(cond, msg)                                              \
  do {                                                                         \
    if (!(cond)) ::halftree::detail::check_failed(__FILE__, __LINE__, (msg));  \
  } while (0)
