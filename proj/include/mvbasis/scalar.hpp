#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mvbasis {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using Scalar = mpq_class;

/// Canonical text: "p/q", or just "p" when the denominator is one.
std::string to_string(const Scalar& s);

/// Accepts "p", "-p", "p/q". Throws ParseError on anything else or a zero denominator.
Scalar parse_scalar(std::string_view text);

inline bool is_integer(const Scalar& s) { return s.get_den() == 1; }

}  // namespace mvbasis
