#include "plancherel/tpoly.hpp"

#include <sstream>

namespace plancherel {

TPoly::TPoly(Rational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

TPoly TPoly::monomial(Rational coeff, std::size_t degree) {
  TPoly p;
  if (coeff == 0) return p;
  p.coeffs_.assign(degree + 1, Rational(0));
  p.coeffs_[degree] = std::move(coeff);
  return p;
}

void TPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator*=(const TPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

TPoly TPoly::operator-() const {
  TPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

Rational TPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

HighFloat TPoly::evaluate(const HighFloat& t) const {
  HighFloat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_high(*it);
  return acc;
}

std::string TPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    if (coeffs_[d] == 0) continue;
    if (!first) s << " + ";
    first = false;
    s << coeffs_[d];
    if (d == 1) s << "*t";
    if (d > 1) s << "*t^" << d;
  }
  return s.str();
}

std::vector<std::string> TPoly::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(rational_to_string(c));
  return out;
}

TPoly TPoly::from_strings(const std::vector<std::string>& coeffs) {
  TPoly p;
  for (const auto& c : coeffs) p.coeffs_.push_back(parse_rational(c));
  p.trim();
  return p;
}

}  // namespace plancherel
