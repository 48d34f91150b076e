#ifndef TAUT_RATIONAL_HPP
#define TAUT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace taut {

/// Exact rational number. Every weight, coefficient and degree in the
/// library is one of these; there is no floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in lowest terms. GMP arithmetic assumes canonical operands, so
/// every two-argument construction goes through here.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q". Throws UsageError on malformed input or a
/// zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Parses a comma-separated list of rationals, e.g. "1,1,1/10".
std::vector<Rational> parse_rational_list(std::string_view text);

/// "p/q" or "p" for integers.
std::string to_string(const Rational& q);

std::string join(const std::vector<Rational>& values, std::string_view sep = ",");

} // namespace taut

#endif // TAUT_RATIONAL_HPP
