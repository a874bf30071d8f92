#pragma once

// Exact evaluation of the state induced by the one-sided Plancherel character
// chi(U) = exp(t * sum_i (x_ii - 1)) on the universal enveloping algebra of
// gl(infinity):
//
//   <X> = D(X) chi |_{x = identity},
//
// where D(E_ij) = sum_a x_ai d/dx_aj is the left-invariant vector field and
// D is extended multiplicatively (the rightmost letter of a word acts first).
// Values are polynomials in t = gamma*L with rational coefficients.

#include "plancherel/gt_core.hpp"
#include "plancherel/numeric.hpp"
#include "plancherel/tpoly.hpp"

#include <Eigen/Dense>

#include "json.hpp"

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace plancherel {

/// Basis element E_ij of gl(infinity); indices are 1-based.
struct Generator {
  int row = 1;
  int col = 1;
  auto operator<=>(const Generator&) const = default;
};

using Word = std::vector<Generator>;

/// Formal linear combination of words with TPoly coefficients. The empty word
/// is the unit. Zero coefficients are never stored.
class NCPolynomial {
 public:
  NCPolynomial() = default;

  static NCPolynomial unit();
  static NCPolynomial scalar(const TPoly& c);
  /// Throws InvalidArgument for indices < 1.
  static NCPolynomial generator(int i, int j);
  static NCPolynomial word(const Word& w, const TPoly& coeff = TPoly(1));

  const std::map<Word, TPoly>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t max_word_length() const noexcept;

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const TPoly& c);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(NCPolynomial a, const TPoly& c) { return a *= c; }
  /// Noncommutative product (word concatenation).
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  bool operator==(const NCPolynomial&) const = default;

 private:
  void add_term(const Word& w, const TPoly& c);
  std::map<Word, TPoly> terms_;
};

struct StateOptions {
  std::size_t max_degree = 8;  ///< longest word accepted by state_eval
};

/// State of a single word; memoized up to index relabeling. Throws
/// ResourceLimit above options.max_degree or on coefficient overflow.
TPoly word_state(const Word& w, const StateOptions& options = {});

/// Linear extension of word_state.
TPoly state_eval(const NCPolynomial& x, const StateOptions& options = {});

/// C_{k,I} = sum over i_1..i_k in I of E_{i1 i2} E_{i2 i3} ... E_{ik i1}.
NCPolynomial gelfand_invariant(int k, const std::vector<int>& index_set,
                               std::size_t term_budget = 1'000'000);

/// Scalar by which C_{k,N} acts in the U(N) irreducible `lam` (Perelomov-Popov):
///   sum_i l_i^k prod_{j != i} (1 - 1/(l_i - l_j)),   l_i = lam_i + N - i.
Rational casimir_eigenvalue(int k, const Signature& lam, int max_k = 4);

/// p_k(lam) = sum_alpha coefficient_alpha * prod_j casimir_eigenvalue(j, lam)^alpha_j
/// for all signatures of a fixed length N.
struct CasimirExpression {
  int k = 0;
  std::size_t n = 0;
  std::vector<std::vector<int>> exponents;  ///< alpha over (C_1..C_k)
  std::vector<Rational> coefficients;
  std::size_t samples_used = 0;
  std::size_t heldout_checked = 0;

  Rational evaluate(const Signature& lam) const;
  /// Central element of U(gl(I)) realizing p_{k,I}.
  NCPolynomial realize(const std::vector<int>& index_set) const;
};

/// Exact interpolation of p_k in the Casimir eigenvalues for k <= 4, N <= 4,
/// verified on 50 held-out random signatures with parts in [-5, 5]. Throws
/// ComputationFailed if the system is inconsistent or the check fails.
CasimirExpression express_p_in_casimirs(int k, std::size_t n);

struct StateFactor {
  int k = 1;
  std::vector<int> index_set;
};

/// <prod_r (P_r - <P_r>)> as a polynomial in t, product in the given order,
/// where P_r realizes p_{k_r, I_r}.
TPoly centered_product_state(const std::vector<StateFactor>& factors,
                             const StateOptions& options = {});

/// <prod_r L^{-k_r} (P_r - <P_r>)> with t = gamma*L.
HighFloat ordered_centered_state(const std::vector<StateFactor>& factors, double L, double gamma,
                                 const StateOptions& options = {});

/// Gaussian moment E[xi_{i1} ... xi_{il}] as a sum over perfect matchings.
/// Throws InvalidArgument for a covariance with eigenvalue below -1e-10 and
/// ResourceLimit for l > 12.
double wick_moment(const Eigen::MatrixXd& cov, std::span<const int> indices);

nlohmann::json to_json(const NCPolynomial& x);
NCPolynomial nc_polynomial_from_json(const nlohmann::json& j);
nlohmann::json state_value_to_json(const TPoly& value);
TPoly state_value_from_json(const nlohmann::json& j);

}  // namespace plancherel
