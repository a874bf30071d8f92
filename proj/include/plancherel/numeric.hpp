#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace plancherel {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
/// 113-bit significand software float used for accumulating measure moments.
using HighFloat = boost::multiprecision::cpp_bin_float_quad;

/// Exact a/b; avoids the two-argument mpq constructor, which does not accept int64 pairs.
inline Rational frac(const BigInt& a, const BigInt& b) {
  Rational r{a};
  r /= Rational{b};
  return r;
}

inline HighFloat to_high(const Rational& q) {
  return HighFloat(boost::multiprecision::numerator(q)) /
         HighFloat(boost::multiprecision::denominator(q));
}

inline double to_double(const Rational& q) { return to_high(q).convert_to<double>(); }

/// "p/q" or "p" when the denominator is one.
inline std::string rational_to_string(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& text);

/// Decimal string with enough digits to round-trip a HighFloat.
std::string high_to_string(const HighFloat& x);

}  // namespace plancherel
