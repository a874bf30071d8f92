#pragma once

// Combinatorics of the Gelfand-Tsetlin graph: signatures, interlacing,
// dimensions of unitary and symmetric group irreducibles, path counts.
//
// Every function here is pure; all dimension arithmetic is exact.

#include "plancherel/numeric.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace plancherel {

/// Weakly decreasing integer vector. Length zero is the root signature (the
/// empty signature), not a sentinel.
class Signature {
 public:
  using Part = std::int64_t;

  Signature() = default;
  /// Throws InvalidArgument unless `parts` is weakly decreasing.
  explicit Signature(std::vector<Part> parts);
  Signature(std::initializer_list<Part> parts) : Signature(std::vector<Part>(parts)) {}

  static Signature empty() { return Signature(); }

  std::size_t length() const noexcept { return parts_.size(); }
  bool is_empty() const noexcept { return parts_.empty(); }
  std::span<const Part> parts() const noexcept { return parts_; }
  Part operator[](std::size_t i) const { return parts_[i]; }

  /// Sum of parts (|lambda| for a partition).
  Part total() const noexcept;
  bool nonnegative() const noexcept { return parts_.empty() || parts_.back() >= 0; }

  /// Appends zeros up to length `n`; requires a nonnegative signature and n >= length().
  Signature padded(std::size_t n) const;
  /// Drops trailing zeros (partition form).
  Signature trimmed() const;
  Signature shifted(Part c) const;

  std::string to_string() const;

  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;

 private:
  std::vector<Part> parts_;
};

/// Chain of signatures levels[k] of length k starting from the empty signature.
class GTPath {
 public:
  /// Throws InvalidArgument if lengths are wrong or consecutive levels do not interlace.
  explicit GTPath(std::vector<Signature> levels);
  const std::vector<Signature>& levels() const noexcept { return levels_; }
  std::size_t depth() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }

 private:
  std::vector<Signature> levels_;
};

/// mu of length N-1 precedes lam of length N. The empty signature precedes
/// every length-one signature.
bool is_interlaced(const Signature& mu, const Signature& lam);

/// Dimension of the U(N) irreducible with highest weight `lam`, via the Weyl product.
BigInt weyl_dim(const Signature& lam);

/// Number of interlacing chains kappa = l(K) < ... < l(N) = nu by explicit
/// recursion. Exponential; for oracle use only.
BigInt count_paths(const Signature& kappa, const Signature& nu);

/// Number of standard Young tableaux of a partition (hook length formula).
BigInt sym_dim(const Signature& lam);

/// All mu with mu < nu, in lexicographic order.
std::vector<Signature> enumerate_interlacing(const Signature& nu);

/// Partitions of exactly n with at most `rows` nonzero parts, padded to `rows`,
/// in reverse lexicographic order.
std::vector<Signature> partitions_of(std::int64_t n, std::size_t rows);

}  // namespace plancherel
