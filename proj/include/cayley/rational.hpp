#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace cayley {

using Int = boost::multiprecision::cpp_int;

// Exact rational with positive denominator and gcd(num, den) = 1,
// both maintained by the backend on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// num/den with sign normalization; den must be nonzero.
inline Rational make_rational(const Int& num, const Int& den) {
  return Rational(num) / Rational(den);
}

// "p/q" when q != 1, plain integer otherwise.
std::string rat_str(const Rational& r);

// Parses "p", "-p", "p/q". Whitespace is not accepted.
std::optional<Rational> rat_parse(const std::string& s);

}  // namespace cayley
