#pragma once

#include "plancherel/numeric.hpp"

#include <string>
#include <vector>

namespace plancherel {

/// Polynomial in the single formal symbol t with exact rational coefficients.
/// Stored densely, lowest degree first, with no trailing zeros.
class TPoly {
 public:
  TPoly() = default;
  TPoly(Rational constant);  // NOLINT: implicit scalar promotion is intended
  TPoly(long constant) : TPoly(Rational(constant)) {}

  static TPoly monomial(Rational coeff, std::size_t degree);
  static TPoly t() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : Rational(0); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  TPoly& operator*=(const TPoly& o);
  TPoly operator-() const;
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(TPoly a, const TPoly& b) { return a *= b; }
  bool operator==(const TPoly&) const = default;

  Rational evaluate(const Rational& t) const;
  HighFloat evaluate(const HighFloat& t) const;

  std::string to_string() const;

  /// Coefficients as decimal strings of rationals, lowest degree first.
  std::vector<std::string> to_strings() const;
  static TPoly from_strings(const std::vector<std::string>& coeffs);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace plancherel
