#pragma once

// Exact one-sided Plancherel measure on signatures of a fixed length N:
//
//   P(lam) = e^{-tN} t^n / n! * dim(lam) * Dim_N(lam),   n = |lam|, lam_N >= 0,
//
// where dim is the symmetric-group dimension and Dim_N the U(N) dimension.
// Weights are kept as (Poisson(tN) pmf at n) x (exact rational dim*Dim/N^n);
// the rational parts at fixed n sum to one.
//
// Coherency between levels N and N+1 uses the ratio Dim_N(lam)/Dim_{N+1}(nu).

#include "plancherel/gt_core.hpp"
#include "plancherel/numeric.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace plancherel {

struct PlancherelParams {
  Rational t;  ///< product gamma*L
  std::size_t n = 1;  ///< signature length |I|
  double tail_epsilon = 1e-12;

  void validate() const;
};

struct Weight {
  HighFloat poisson_factor;  ///< e^{-tN} (tN)^n / n!
  Rational rational_part;    ///< dim * Dim_N / N^n
  HighFloat value() const { return poisson_factor * to_high(rational_part); }
};

/// Zero weight for signatures with a negative part. Signatures shorter than N
/// are zero-padded; longer ones are rejected.
Weight weight(const Signature& lam, const PlancherelParams& params);

/// e^{-mu} mu^n / n! in high precision.
HighFloat poisson_pmf(const HighFloat& mu, std::int64_t n);

/// Smallest n_max whose Chernoff bound on P(Poisson(mu) > n_max) is below eps.
std::int64_t poisson_truncation(double mu, double eps);

/// Chernoff bound on P(Poisson(mu) > n).
double poisson_tail_bound(double mu, std::int64_t n);

inline constexpr std::int64_t kMaxTruncation = 40;

struct MeasureEntry {
  Signature signature;  ///< padded to length N
  Weight weight;
};

struct MeasureTable {
  PlancherelParams params;
  std::int64_t n_max = 0;
  std::vector<MeasureEntry> entries;
  HighFloat covered_mass;

  /// Entry for a (padded) signature, or nullptr if outside the table.
  const MeasureEntry* find(const Signature& lam) const;
  /// Certified bound on the mass outside the table.
  double tail_bound() const;

 private:
  friend MeasureTable enumerate_support(const PlancherelParams&);
  friend MeasureTable measure_table_from_json(const nlohmann::json&);
  void build_index();
  std::map<Signature, std::size_t> index_;
};

/// All partitions with |lam| <= n_max and at most N rows. Throws ResourceLimit
/// when the Poisson truncation point would exceed kMaxTruncation.
MeasureTable enumerate_support(const PlancherelParams& params);

struct CoherencyResult {
  HighFloat lhs;  ///< M_N(lam)
  HighFloat rhs;  ///< sum over nu > lam of M_{N+1}(nu) Dim_N(lam)/Dim_{N+1}(nu)
  double truncation_bound = 0;
  bool certified = false;  ///< truncation_bound below the requested tolerance
};

/// Coherency relation between the level-N table and a level-(N+1) table
/// built with the same t.
CoherencyResult coherency_check(const MeasureTable& level_n, const MeasureTable& level_n1,
                                const Signature& lam, double tolerance = 1e-10);

/// Convenience overload that builds both tables from `params`.
CoherencyResult coherency_check(const PlancherelParams& params, const Signature& lam,
                                double tolerance = 1e-10);

/// sum_i ((lam_i - i + 1/2)^k - (-i + 1/2)^k), exact.
Rational shifted_power_sum(int k, const Signature& lam);

/// |f(lam)| <= constant * (1 + |lam|)^degree.
struct GrowthBound {
  double constant = 1;
  int degree = 0;
};

/// Growth bound satisfied by shifted_power_sum(k, .) on length-N partitions.
GrowthBound power_sum_growth(int k, std::size_t n);

struct MomentResult {
  HighFloat value;
  HighFloat tail_bound;  ///< rigorous bound on |true - value|
};

using SignatureFunction = std::function<Rational(const Signature&)>;

/// Sum of f * weight over the table plus a tail bound from the declared growth.
/// Throws InvalidArgument when `growth` is missing.
MomentResult exact_moment(const MeasureTable& table, const SignatureFunction& f,
                          std::optional<GrowthBound> growth);
MomentResult exact_moment(const SignatureFunction& f, const PlancherelParams& params,
                          std::optional<GrowthBound> growth);

/// Distribution of the level-k member of a uniformly random path ending at nu:
/// mu -> number of paths from mu to nu. Computed by dynamic programming down
/// the interlacing levels.
std::map<Signature, BigInt> paths_to_level(const Signature& nu, std::size_t k);

/// E[f_k(lam^(k)) f_n(lam^(n))] for nested levels k < n = params.n under the
/// path measure; the level-k member is distributed as Dim_k(mu) paths(mu,nu)/Dim_n(nu).
MomentResult nested_joint_moment(std::size_t k, const SignatureFunction& f_k,
                                 const SignatureFunction& f_n, const PlancherelParams& params,
                                 std::optional<GrowthBound> growth_k,
                                 std::optional<GrowthBound> growth_n);

nlohmann::json to_json(const MeasureTable& table);
MeasureTable measure_table_from_json(const nlohmann::json& j);

}  // namespace plancherel
