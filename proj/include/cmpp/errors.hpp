#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cmpp {

// Bad caller input: malformed arguments, mismatched truncations, stale
// height assignments, shape mismatches.
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Well-formed input outside the supported domain (inadmissible partition,
// k != 1 where the algorithm needs it, part on a deleted cell).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A property the algorithms guarantee was observed to fail.
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] inline void assert_fail(const char* expr, const char* file, int line) {
  std::fprintf(stderr, "cmpp: internal invariant violated: %s (%s:%d)\n", expr, file, line);
  std::abort();
}
}  // namespace detail

}  // namespace cmpp

#define CMPP_ASSERT(x) ((x) ? (void)0 : ::cmpp::detail::assert_fail(#x, __FILE__, __LINE__))
