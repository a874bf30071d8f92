#include "plancherel/plancherel_exact.hpp"

#include "plancherel/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

namespace plancherel {

void PlancherelParams::validate() const {
  if (t <= 0) throw InvalidArgument("Plancherel parameter t must be positive");
  if (n < 1) throw InvalidArgument("signature length N must be at least 1");
  if (!(tail_epsilon > 0 && tail_epsilon < 1)) {
    throw InvalidArgument("tail_epsilon must lie in (0,1)");
  }
}

HighFloat poisson_pmf(const HighFloat& mu, std::int64_t n) {
  HighFloat value = exp(-mu);
  for (std::int64_t k = 1; k <= n; ++k) value *= mu / k;
  return value;
}

double poisson_tail_bound(double mu, std::int64_t n) {
  const double k = static_cast<double>(n + 1);
  if (k <= mu) return 1.0;
  // P(X >= k) <= e^{-mu} (e mu / k)^k
  const double log_bound = -mu + k * (1.0 + std::log(mu) - std::log(k));
  return std::min(1.0, std::exp(log_bound));
}

std::int64_t poisson_truncation(double mu, double eps) {
  std::int64_t n = 0;
  while (poisson_tail_bound(mu, n) >= eps) {
    ++n;
    if (n > 100000) throw ResourceLimit("Poisson truncation does not converge");
  }
  return n;
}

Weight weight(const Signature& lam, const PlancherelParams& params) {
  if (lam.length() > params.n) {
    throw InvalidArgument("signature " + lam.to_string() + " longer than N = " +
                          std::to_string(params.n));
  }
  const HighFloat mu = to_high(params.t) * params.n;
  if (!lam.nonnegative()) return Weight{HighFloat(0), Rational(0)};
  const Signature padded = lam.padded(params.n);
  const auto n = padded.total();
  BigInt scale = 1;
  for (std::int64_t i = 0; i < n; ++i) scale *= static_cast<long>(params.n);
  Rational rational_part = frac(sym_dim(padded) * weyl_dim(padded), scale);
  return Weight{poisson_pmf(mu, n), rational_part};
}

const MeasureEntry* MeasureTable::find(const Signature& lam) const {
  if (!lam.nonnegative() || lam.length() > params.n) return nullptr;
  const auto it = index_.find(lam.padded(params.n));
  return it == index_.end() ? nullptr : &entries[it->second];
}

double MeasureTable::tail_bound() const {
  return poisson_tail_bound(to_double(params.t) * static_cast<double>(params.n), n_max);
}

void MeasureTable::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < entries.size(); ++i) index_.emplace(entries[i].signature, i);
}

MeasureTable enumerate_support(const PlancherelParams& params) {
  params.validate();
  const double mu = to_double(params.t) * static_cast<double>(params.n);
  const auto n_max = poisson_truncation(mu, params.tail_epsilon);
  if (n_max > kMaxTruncation) {
    throw ResourceLimit("Poisson truncation point " + std::to_string(n_max) +
                        " exceeds the enumeration bound n_max <= " +
                        std::to_string(kMaxTruncation));
  }
  MeasureTable table;
  table.params = params;
  table.n_max = n_max;
  table.covered_mass = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (auto& lam : partitions_of(n, params.n)) {
      Weight w = weight(lam, params);
      table.covered_mass += w.value();
      table.entries.push_back(MeasureEntry{std::move(lam), std::move(w)});
    }
  }
  table.build_index();
  return table;
}

namespace {

// Signatures nu of length N+1 with lam < nu, nu_{N+1} >= 0 and |nu| <= cap.
std::vector<Signature> nonnegative_successors(const Signature& lam, std::int64_t cap) {
  const std::size_t n = lam.length();
  // rest_lo[i]: smallest possible sum of nu_i..nu_{N+1}, since nu_i >= lam_i for i < N.
  std::vector<std::int64_t> rest_lo(n + 2, 0);
  for (std::size_t i = n; i-- > 0;) rest_lo[i] = rest_lo[i + 1] + lam[i];
  std::vector<Signature> out;
  std::vector<Signature::Part> cur(n + 1);
  std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t sum) {
    if (i == n + 1) {
      out.emplace_back(cur);
      return;
    }
    const Signature::Part lo = (i == n) ? 0 : lam[i];
    const Signature::Part hi = (i == 0) ? cap : lam[i - 1];
    for (auto v = lo; v <= hi; ++v) {
      if (sum + v + rest_lo[i + 1] > cap) break;
      cur[i] = v;
      fill(i + 1, sum + v);
    }
  };
  fill(0, 0);
  return out;
}

}  // namespace

CoherencyResult coherency_check(const MeasureTable& level_n, const MeasureTable& level_n1,
                                const Signature& lam, double tolerance) {
  const std::size_t n = level_n.params.n;
  if (level_n1.params.n != n + 1 || level_n1.params.t != level_n.params.t) {
    throw InvalidArgument("coherency_check needs tables at levels N and N+1 with equal t");
  }
  CoherencyResult result;
  if (!lam.nonnegative()) {
    result.lhs = 0;
    result.rhs = 0;
    result.certified = true;
    return result;
  }
  const Signature padded = lam.padded(n);
  const MeasureEntry* entry = level_n.find(padded);
  result.lhs = entry ? entry->weight.value() : weight(padded, level_n.params).value();
  const BigInt dim_lam = weyl_dim(padded);
  result.rhs = 0;
  for (const auto& nu : nonnegative_successors(padded, level_n1.n_max)) {
    const MeasureEntry* e = level_n1.find(nu);
    const HighFloat w = e ? e->weight.value() : weight(nu, level_n1.params).value();
    result.rhs += w * to_high(frac(dim_lam, weyl_dim(nu)));
  }
  // Dim_N(lam) <= Dim_{N+1}(nu), so the omitted terms are bounded by the level-(N+1) tail.
  result.truncation_bound = level_n1.tail_bound();
  result.certified = result.truncation_bound < tolerance;
  return result;
}

CoherencyResult coherency_check(const PlancherelParams& params, const Signature& lam,
                                double tolerance) {
  if (params.n == 0 && lam.is_empty()) {
    PlancherelParams one = params;
    one.n = 1;
    const MeasureTable level1 = enumerate_support(one);
    CoherencyResult result;
    result.lhs = 1;
    result.rhs = level1.covered_mass;  // Dim_0 = Dim_1 = 1
    result.truncation_bound = level1.tail_bound();
    result.certified = result.truncation_bound < tolerance;
    return result;
  }
  PlancherelParams next = params;
  next.n = params.n + 1;
  return coherency_check(enumerate_support(params), enumerate_support(next), lam, tolerance);
}

Rational shifted_power_sum(int k, const Signature& lam) {
  if (k < 1) throw InvalidArgument("shifted power sums need k >= 1");
  Rational total = 0;
  for (std::size_t i = 0; i < lam.length(); ++i) {
    const Rational base = frac(1, 2) - static_cast<long>(i + 1);
    const Rational shifted = base + lam[i];
    Rational a = 1, b = 1;
    for (int j = 0; j < k; ++j) {
      a *= shifted;
      b *= base;
    }
    total += a - b;
  }
  return total;
}

GrowthBound power_sum_growth(int k, std::size_t n) {
  return GrowthBound{static_cast<double>(k) * std::pow(static_cast<double>(n), k - 1), k};
}

namespace {

// Rigorous bound on sum_{m > n_max} C (1+m)^d P(Poisson(mu) = m). Terms are
// summed explicitly until the (decreasing) term ratio drops below 1/2, then the
// rest is bounded geometrically.
double tail_moment_bound(double mu, std::int64_t n_max, const GrowthBound& g) {
  double sum = 0;
  for (std::int64_t m = n_max + 1;; ++m) {
    const double md = static_cast<double>(m);
    const double log_term = std::log(g.constant) + g.degree * std::log1p(md) - mu +
                            md * std::log(mu) - std::lgamma(md + 1);
    const double term = std::exp(log_term);
    sum += term;
    const double ratio = std::pow((md + 2) / (md + 1), g.degree) * mu / (md + 1);
    if (ratio < 0.5) {
      sum += term * ratio / (1 - ratio);
      break;
    }
    if (m > n_max + 100000) throw ComputationFailed("tail bound series does not converge");
  }
  return sum * (1 + 1e-9);
}

}  // namespace

MomentResult exact_moment(const MeasureTable& table, const SignatureFunction& f,
                          std::optional<GrowthBound> growth) {
  if (!growth) throw InvalidArgument("exact_moment needs a growth bound for the tail estimate");
  MomentResult result;
  result.value = 0;
  for (const auto& e : table.entries) result.value += to_high(f(e.signature)) * e.weight.value();
  const double mu = to_double(table.params.t) * static_cast<double>(table.params.n);
  result.tail_bound = tail_moment_bound(mu, table.n_max, *growth);
  return result;
}

MomentResult exact_moment(const SignatureFunction& f, const PlancherelParams& params,
                          std::optional<GrowthBound> growth) {
  if (!growth) throw InvalidArgument("exact_moment needs a growth bound for the tail estimate");
  return exact_moment(enumerate_support(params), f, growth);
}

std::map<Signature, BigInt> paths_to_level(const Signature& nu, std::size_t k) {
  if (k > nu.length()) throw InvalidArgument("paths_to_level needs k <= length(nu)");
  std::map<Signature, BigInt> current{{nu, BigInt(1)}};
  for (std::size_t level = nu.length(); level > k; --level) {
    std::map<Signature, BigInt> next;
    for (const auto& [sig, count] : current) {
      for (auto& mu : enumerate_interlacing(sig)) next[std::move(mu)] += count;
    }
    current = std::move(next);
  }
  return current;
}

MomentResult nested_joint_moment(std::size_t k, const SignatureFunction& f_k,
                                 const SignatureFunction& f_n, const PlancherelParams& params,
                                 std::optional<GrowthBound> growth_k,
                                 std::optional<GrowthBound> growth_n) {
  if (!growth_k || !growth_n) {
    throw InvalidArgument("nested_joint_moment needs growth bounds for both functions");
  }
  if (k >= params.n) throw InvalidArgument("nested_joint_moment needs K < N");
  const MeasureTable table = enumerate_support(params);
  std::map<Signature, BigInt> dim_cache;
  auto dim_of = [&](const Signature& s) -> const BigInt& {
    auto it = dim_cache.find(s);
    if (it == dim_cache.end()) it = dim_cache.emplace(s, weyl_dim(s)).first;
    return it->second;
  };
  MomentResult result;
  result.value = 0;
  for (const auto& e : table.entries) {
    const Rational outer = f_n(e.signature);
    if (outer == 0) continue;
    Rational inner = 0;
    for (const auto& [mu, paths] : paths_to_level(e.signature, k)) {
      inner += Rational(dim_of(mu) * paths) * f_k(mu);
    }
    inner /= Rational(dim_of(e.signature));
    result.value += e.weight.value() * to_high(outer * inner);
  }
  const GrowthBound joint{growth_k->constant * growth_n->constant,
                          growth_k->degree + growth_n->degree};
  const double mu = to_double(params.t) * static_cast<double>(params.n);
  result.tail_bound = tail_moment_bound(mu, table.n_max, joint);
  return result;
}

nlohmann::json to_json(const MeasureTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : table.entries) {
    std::vector<Signature::Part> parts(e.signature.parts().begin(), e.signature.parts().end());
    entries.push_back({{"signature", parts},
                       {"weight",
                        {high_to_string(e.weight.poisson_factor),
                         rational_to_string(e.weight.rational_part)}}});
  }
  return {{"t", rational_to_string(table.params.t)},
          {"n", table.params.n},
          {"tail_epsilon", table.params.tail_epsilon},
          {"n_max", table.n_max},
          {"covered_mass", high_to_string(table.covered_mass)},
          {"entries", std::move(entries)}};
}

MeasureTable measure_table_from_json(const nlohmann::json& j) {
  MeasureTable table;
  table.params.t = parse_rational(j.at("t").get<std::string>());
  table.params.n = j.at("n").get<std::size_t>();
  table.params.tail_epsilon = j.at("tail_epsilon").get<double>();
  table.params.validate();
  table.n_max = j.at("n_max").get<std::int64_t>();
  table.covered_mass = HighFloat(j.at("covered_mass").get<std::string>());
  for (const auto& e : j.at("entries")) {
    Signature sig(e.at("signature").get<std::vector<Signature::Part>>());
    const auto& w = e.at("weight");
    table.entries.push_back(MeasureEntry{
        std::move(sig),
        Weight{HighFloat(w.at(0).get<std::string>()), parse_rational(w.at(1).get<std::string>())}});
  }
  table.build_index();
  return table;
}

}  // namespace plancherel
