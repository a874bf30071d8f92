#pragma once

// Index sequences A = (a_1, a_2, ...) of pairwise distinct positive integers,
// possibly depending on the scale parameter L. A_m = {a_1, ..., a_m}.

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plancherel {

enum class SequenceKind { identity, arithmetic, block_swap, explicit_list };

/// Portion of a scaled prefix A_{[xL]} / L: values v with v/L in [lo, hi) and
/// v = residue (mod modulus), present with density 1/modulus.
struct DensitySegment {
  double lo = 0;
  double hi = 0;
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
};

class SequenceRule {
 public:
  /// a_n = n
  static SequenceRule identity();
  /// a_n = q n + r; requires q >= 1 and q + r >= 1.
  static SequenceRule arithmetic(std::int64_t q, std::int64_t r);
  /// a_n = n + L for n <= L, n - L for L < n <= 2L, n otherwise.
  static SequenceRule block_swap();
  /// Finite prefix; requests beyond its length throw InvalidArgument.
  static SequenceRule explicit_list(std::vector<std::int64_t> values);

  SequenceKind kind() const noexcept { return kind_; }
  std::int64_t q() const noexcept { return q_; }
  std::int64_t r() const noexcept { return r_; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

  /// a_n(L), n >= 1.
  std::int64_t term(std::int64_t n, std::int64_t L) const;
  /// (a_1, ..., a_m) in sequence order.
  std::vector<std::int64_t> prefix(std::int64_t m, std::int64_t L) const;
  /// True when the sequence is increasing in natural order for every L.
  bool increasing() const noexcept;

  /// Limit of A_{[xL]}/L as disjoint density segments; nullopt for explicit lists.
  std::optional<std::vector<DensitySegment>> limit_segments(double x) const;

  std::string name() const;
  nlohmann::json to_json() const;
  /// Accepts {"kind": "identity" | "arithmetic" (q, r) | "block_swap" |
  /// "explicit" (values)}; unknown keys are errors.
  static SequenceRule from_json(const nlohmann::json& j);

  bool operator==(const SequenceRule&) const = default;

 private:
  SequenceKind kind_ = SequenceKind::identity;
  std::int64_t q_ = 1;
  std::int64_t r_ = 0;
  std::vector<std::int64_t> values_;
};

/// floor(y * L) computed robustly for y given in decimal.
std::int64_t scaled_level(double y, std::int64_t L);

}  // namespace plancherel
