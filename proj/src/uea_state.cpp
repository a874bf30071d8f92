#include "plancherel/uea_state.hpp"

#include "plancherel/errors.hpp"
#include "plancherel/plancherel_exact.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>

namespace plancherel {

// ---------------------------------------------------------------------------
// NCPolynomial

NCPolynomial NCPolynomial::unit() { return word({}); }

NCPolynomial NCPolynomial::scalar(const TPoly& c) { return word({}, c); }

NCPolynomial NCPolynomial::generator(int i, int j) {
  if (i < 1 || j < 1) throw InvalidArgument("generator indices must be >= 1");
  return word({Generator{i, j}});
}

NCPolynomial NCPolynomial::word(const Word& w, const TPoly& coeff) {
  for (const auto& g : w) {
    if (g.row < 1 || g.col < 1) throw InvalidArgument("generator indices must be >= 1");
  }
  NCPolynomial p;
  p.add_term(w, coeff);
  return p;
}

std::size_t NCPolynomial::max_word_length() const noexcept {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

void NCPolynomial::add_term(const Word& w, const TPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const TPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// word_state: symbolic differentiation of (x-monomial) * chi.

namespace {

// Integer polynomial in t with overflow-checked arithmetic.
using IntPoly = std::vector<std::int64_t>;

void add_scaled(IntPoly& acc, const IntPoly& p, std::int64_t factor, std::size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t d = 0; d < p.size(); ++d) {
    std::int64_t term = 0;
    if (__builtin_mul_overflow(p[d], factor, &term) ||
        __builtin_add_overflow(acc[d + shift], term, &acc[d + shift])) {
      throw ResourceLimit("word_state coefficient overflow");
    }
  }
}

// Variables x_ab encoded as a * kMaxIndex + b over relabeled indices.
constexpr std::uint16_t kMaxIndex = 64;
using Monomial = std::vector<std::uint16_t>;  // sorted, with repetition

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

using Expression = std::unordered_map<Monomial, IntPoly, MonomialHash>;

void insert_sorted(Monomial& m, std::uint16_t v) { m.insert(std::upper_bound(m.begin(), m.end(), v), v); }

IntPoly evaluate_relabeled(const std::vector<std::pair<int, int>>& word) {
  const std::size_t n = word.size();
  // columns[s]: set of operator columns among letters 0..s-1 (those still to act
  // after letter s). A variable x_ab with a != b can only become diagonal if some
  // later operator has column b.
  std::vector<std::uint64_t> columns(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) columns[s + 1] = columns[s] | (1ull << word[s].second);

  Expression expr;
  expr.emplace(Monomial{}, IntPoly{1});
  for (std::size_t s = n; s-- > 0;) {
    const auto [i, j] = word[s];
    const std::uint64_t live = columns[s];
    auto alive = [&](const Monomial& m) {
      for (auto v : m) {
        const int a = v / kMaxIndex, b = v % kMaxIndex;
        if (a != b && !(live >> b & 1u)) return false;
      }
      return true;
    };
    Expression next;
    for (const auto& [mono, coef] : expr) {
      // derivative of chi: d/dx_aj exp(t sum x_cc) = t delta_aj, contributes t x_ji
      {
        Monomial m = mono;
        insert_sorted(m, static_cast<std::uint16_t>(j * kMaxIndex + i));
        if (alive(m)) add_scaled(next[m], coef, 1, 1);
      }
      // derivative of the monomial: x_ai d/dx_aj replaces one x_aj by x_ai
      for (std::size_t p = 0; p < mono.size();) {
        std::size_t q = p;
        while (q < mono.size() && mono[q] == mono[p]) ++q;
        const int a = mono[p] / kMaxIndex, b = mono[p] % kMaxIndex;
        if (b == j) {
          Monomial m = mono;
          m.erase(m.begin() + static_cast<long>(p));
          insert_sorted(m, static_cast<std::uint16_t>(a * kMaxIndex + i));
          if (alive(m)) add_scaled(next[m], coef, static_cast<std::int64_t>(q - p), 0);
        }
        p = q;
      }
    }
    expr = std::move(next);
  }
  IntPoly total;
  for (const auto& [mono, coef] : expr) {
    // every surviving variable is diagonal: value 1 at the identity
    add_scaled(total, coef, 1, 0);
  }
  return total;
}

struct WordCache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, TPoly> values;
};

WordCache& word_cache() {
  static WordCache cache;
  return cache;
}

}  // namespace

TPoly word_state(const Word& w, const StateOptions& options) {
  if (w.size() > options.max_degree) {
    throw ResourceLimit("word of length " + std::to_string(w.size()) +
                        " exceeds the state degree bound " + std::to_string(options.max_degree));
  }
  // Relabel indices by first appearance; the state is invariant under relabeling.
  std::map<int, int> relabel;
  std::vector<std::pair<int, int>> canon;
  canon.reserve(w.size());
  std::string key;
  for (const auto& g : w) {
    if (g.row < 1 || g.col < 1) throw InvalidArgument("generator indices must be >= 1");
    const int r = relabel.try_emplace(g.row, static_cast<int>(relabel.size())).first->second;
    const int c = relabel.try_emplace(g.col, static_cast<int>(relabel.size())).first->second;
    canon.emplace_back(r, c);
    key.push_back(static_cast<char>(r));
    key.push_back(static_cast<char>(c));
  }
  if (relabel.size() > kMaxIndex) throw ResourceLimit("too many distinct indices in word");

  auto& cache = word_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.values.find(key); it != cache.values.end()) return it->second;
  }
  const IntPoly raw = evaluate_relabeled(canon);
  TPoly value;
  for (std::size_t d = 0; d < raw.size(); ++d) {
    value += TPoly::monomial(Rational(static_cast<long long>(raw[d])), d);
  }
  std::unique_lock lock(cache.mutex);
  cache.values.emplace(std::move(key), value);
  return value;
}

TPoly state_eval(const NCPolynomial& x, const StateOptions& options) {
  if (x.max_word_length() > options.max_degree) {
    throw ResourceLimit("element has words of length " + std::to_string(x.max_word_length()) +
                        " above the degree bound " + std::to_string(options.max_degree));
  }
  TPoly total;
  for (const auto& [w, c] : x.terms()) total += c * word_state(w, options);
  return total;
}

// ---------------------------------------------------------------------------
// Central elements

NCPolynomial gelfand_invariant(int k, const std::vector<int>& index_set, std::size_t term_budget) {
  if (k < 1) throw InvalidArgument("gelfand_invariant needs k >= 1");
  if (index_set.empty()) throw InvalidArgument("gelfand_invariant needs a nonempty index set");
  double terms = 1;
  for (int r = 0; r < k; ++r) terms *= static_cast<double>(index_set.size());
  if (terms > static_cast<double>(term_budget)) {
    throw ResourceLimit("gelfand_invariant would create " + std::to_string(terms) +
                        " terms, above the budget " + std::to_string(term_budget));
  }
  NCPolynomial out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  const std::size_t m = index_set.size();
  while (true) {
    Word w;
    w.reserve(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      w.push_back(Generator{index_set[idx[r]], index_set[idx[(r + 1) % idx.size()]]});
    }
    out += NCPolynomial::word(w);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

Rational casimir_eigenvalue(int k, const Signature& lam, int max_k) {
  if (k < 1 || k > max_k) {
    throw InvalidArgument("casimir_eigenvalue supports 1 <= k <= " + std::to_string(max_k));
  }
  const auto n = static_cast<std::int64_t>(lam.length());
  std::vector<std::int64_t> l(lam.length());
  for (std::int64_t i = 0; i < n; ++i) l[i] = lam[i] + n - (i + 1);
  Rational total = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    Rational term = 1;
    for (int r = 0; r < k; ++r) term *= l[i];
    for (std::int64_t j = 0; j < n; ++j) {
      if (j != i) term *= frac(l[i] - l[j] - 1, l[i] - l[j]);
    }
    total += term;
  }
  return total;
}

namespace {

std::vector<std::vector<int>> weighted_monomials(int k) {
  // alpha over (C_1..C_k) with sum_j j*alpha_j <= k, graded by weight
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> fill = [&](int j, int budget) {
    if (j > k) {
      out.push_back(alpha);
      return;
    }
    for (int a = 0; a * j <= budget; ++a) {
      alpha[j - 1] = a;
      fill(j + 1, budget - a * j);
    }
    alpha[j - 1] = 0;
  };
  fill(1, k);
  auto weight = [](const std::vector<int>& a) {
    int w = 0;
    for (std::size_t j = 0; j < a.size(); ++j) w += static_cast<int>(j + 1) * a[j];
    return w;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& x, const auto& y) { return weight(x) < weight(y); });
  return out;
}

Rational monomial_value(const std::vector<int>& alpha, const std::vector<Rational>& casimirs) {
  Rational v = 1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (int a = 0; a < alpha[j]; ++a) v *= casimirs[j];
  }
  return v;
}

std::vector<Rational> casimir_values(int k, const Signature& lam) {
  std::vector<Rational> c;
  for (int j = 1; j <= k; ++j) c.push_back(casimir_eigenvalue(j, lam));
  return c;
}

// Signatures of length n with parts in [-bound, bound] and at least one part of
// absolute value >= 6, so that they are disjoint from the held-out box [-5, 5].
std::vector<Signature> interpolation_samples(std::size_t n, std::size_t count) {
  std::vector<Signature> out;
  for (std::int64_t bound = 6; out.size() < count; ++bound) {
    out.clear();
    std::vector<Signature::Part> cur(n);
    std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t cap) {
      if (out.size() >= count) return;
      if (i == n) {
        const bool outside = std::any_of(cur.begin(), cur.end(),
                                         [](auto v) { return v >= 6 || v <= -6; });
        if (outside) out.emplace_back(cur);
        return;
      }
      for (auto v = cap; v >= -bound; --v) {
        cur[i] = v;
        fill(i + 1, v);
      }
    };
    fill(0, bound);
  }
  return out;
}

// Fraction-free (Bareiss) elimination of an integer augmented system; returns
// one solution with free variables set to zero, or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<BigInt>> a,
                                                 std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j <= cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t c = pivot_cols[i];
    Rational acc(a[i][cols]);
    for (std::size_t j = c + 1; j < cols; ++j) acc -= Rational(a[i][j]) * x[j];
    x[c] = acc / Rational(a[i][c]);
  }
  return x;
}

}  // namespace

Rational CasimirExpression::evaluate(const Signature& lam) const {
  const auto c = casimir_values(k, lam);
  Rational total = 0;
  for (std::size_t m = 0; m < exponents.size(); ++m) {
    if (coefficients[m] != 0) total += coefficients[m] * monomial_value(exponents[m], c);
  }
  return total;
}

NCPolynomial CasimirExpression::realize(const std::vector<int>& index_set) const {
  if (index_set.size() != n) {
    throw InvalidArgument("index set size does not match the expression's N");
  }
  std::vector<NCPolynomial> casimirs;
  for (int j = 1; j <= k; ++j) casimirs.push_back(gelfand_invariant(j, index_set));
  NCPolynomial out;
  for (std::size_t m = 0; m < exponents.size(); ++m) {
    if (coefficients[m] == 0) continue;
    NCPolynomial term = NCPolynomial::unit();
    for (std::size_t j = 0; j < exponents[m].size(); ++j) {
      for (int a = 0; a < exponents[m][j]; ++a) term = term * casimirs[j];
    }
    out += term * TPoly(coefficients[m]);
  }
  return out;
}

CasimirExpression express_p_in_casimirs(int k, std::size_t n) {
  if (k < 1 || k > 4 || n < 1 || n > 4) {
    throw InvalidArgument("express_p_in_casimirs supports 1 <= k <= 4 and 1 <= N <= 4");
  }
  CasimirExpression expr;
  expr.k = k;
  expr.n = n;
  expr.exponents = weighted_monomials(k);
  const std::size_t cols = expr.exponents.size();
  const auto samples = interpolation_samples(n, 2 * cols);

  std::vector<std::vector<BigInt>> system;
  for (const auto& lam : samples) {
    const auto c = casimir_values(k, lam);
    std::vector<Rational> row;
    for (const auto& alpha : expr.exponents) row.push_back(monomial_value(alpha, c));
    row.push_back(shifted_power_sum(k, lam));
    BigInt scale = 1;
    for (const auto& q : row) scale = boost::multiprecision::lcm(scale, denominator(q));
    std::vector<BigInt> int_row;
    for (const auto& q : row) int_row.push_back(numerator(q) * (scale / denominator(q)));
    system.push_back(std::move(int_row));
  }
  auto solution = solve_exact(std::move(system), cols);
  if (!solution) {
    throw ComputationFailed("p_" + std::to_string(k) + " is not in the span of Casimir monomials" +
                            " of weighted degree <= " + std::to_string(k) +
                            " for N = " + std::to_string(n));
  }
  expr.coefficients = std::move(*solution);
  expr.samples_used = samples.size();

  std::mt19937_64 rng(0x5eed0f11ull + 97 * static_cast<unsigned>(k) + static_cast<unsigned>(n));
  std::uniform_int_distribution<int> part(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Signature::Part> parts(n);
    for (auto& p : parts) p = part(rng);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    const Signature lam(parts);
    const Rational expected = shifted_power_sum(k, lam);
    const Rational got = expr.evaluate(lam);
    if (expected != got) {
      std::ostringstream msg;
      msg << "held-out mismatch for p_" << k << " at " << lam.to_string() << ": expected "
          << expected << ", interpolant gives " << got;
      throw ComputationFailed(msg.str());
    }
    ++expr.heldout_checked;
  }
  return expr;
}

// ---------------------------------------------------------------------------
// Ordered centered states

namespace {

const CasimirExpression& cached_expression(int k, std::size_t n) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, std::size_t>, CasimirExpression> cache;
  const auto key = std::make_pair(k, n);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  CasimirExpression expr = express_p_in_casimirs(k, n);
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(expr)).first->second;
}

}  // namespace

TPoly centered_product_state(const std::vector<StateFactor>& factors, const StateOptions& options) {
  NCPolynomial product = NCPolynomial::unit();
  for (const auto& f : factors) {
    std::vector<int> index_set = f.index_set;
    std::sort(index_set.begin(), index_set.end());
    if (std::adjacent_find(index_set.begin(), index_set.end()) != index_set.end()) {
      throw InvalidArgument("index sets must not repeat indices");
    }
    const NCPolynomial p = cached_expression(f.k, index_set.size()).realize(index_set);
    const TPoly mean = state_eval(p, options);
    product = product * (p - NCPolynomial::scalar(mean));
  }
  return state_eval(product, options);
}

HighFloat ordered_centered_state(const std::vector<StateFactor>& factors, double L, double gamma,
                                 const StateOptions& options) {
  const TPoly value = centered_product_state(factors, options);
  const HighFloat t = HighFloat(gamma) * HighFloat(L);
  HighFloat scaled = value.evaluate(t);
  for (const auto& f : factors) scaled /= pow(HighFloat(L), f.k);
  return scaled;
}

// ---------------------------------------------------------------------------
// Wick

double wick_moment(const Eigen::MatrixXd& cov, std::span<const int> indices) {
  if (cov.rows() != cov.cols()) throw InvalidArgument("covariance must be square");
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + cov.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("covariance must be symmetric");
  }
  if (cov.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
      throw InvalidArgument("covariance is not positive semidefinite");
    }
  }
  if (indices.size() > 12) throw ResourceLimit("wick_moment supports at most 12 factors");
  for (int i : indices) {
    if (i < 0 || i >= cov.rows()) throw InvalidArgument("wick index out of range");
  }
  if (indices.size() % 2 == 1) return 0.0;
  std::vector<int> rest(indices.begin(), indices.end());
  std::function<double(std::vector<int>&)> pair_up = [&](std::vector<int>& items) -> double {
    if (items.empty()) return 1.0;
    const int first = items.front();
    double total = 0;
    for (std::size_t m = 1; m < items.size(); ++m) {
      std::vector<int> remaining;
      remaining.reserve(items.size() - 2);
      for (std::size_t q = 1; q < items.size(); ++q) {
        if (q != m) remaining.push_back(items[q]);
      }
      total += cov(first, items[m]) * pair_up(remaining);
    }
    return total;
  };
  return pair_up(rest);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const NCPolynomial& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : x.terms()) {
    nlohmann::json word = nlohmann::json::array();
    for (const auto& g : w) word.push_back({g.row, g.col});
    terms.push_back({{"word", std::move(word)}, {"coeff", c.to_strings()}});
  }
  return {{"terms", std::move(terms)}};
}

NCPolynomial nc_polynomial_from_json(const nlohmann::json& j) {
  NCPolynomial out;
  for (const auto& term : j.at("terms")) {
    Word w;
    for (const auto& g : term.at("word")) w.push_back(Generator{g.at(0).get<int>(), g.at(1).get<int>()});
    out += NCPolynomial::word(w, TPoly::from_strings(term.at("coeff").get<std::vector<std::string>>()));
  }
  return out;
}

nlohmann::json state_value_to_json(const TPoly& value) { return {{"poly_in_t", value.to_strings()}}; }

TPoly state_value_from_json(const nlohmann::json& j) {
  return TPoly::from_strings(j.at("poly_in_t").get<std::vector<std::string>>());
}

}  // namespace plancherel
