#pragma once

#include <gmpxx.h>

#include <string>

namespace jetcheck {

/// Exact rational with arbitrary-precision numerator and denominator.
/// GMP keeps values canonical (lowest terms, positive denominator) after
/// every arithmetic operation.
using Rational = mpq_class;

[[nodiscard]] inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

[[nodiscard]] inline std::string to_string(const Rational& q) { return q.get_str(); }

[[nodiscard]] inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace jetcheck
