#include "plancherel/gt_core.hpp"

#include "plancherel/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace plancherel {

Signature::Signature(std::vector<Part> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
    if (parts_[i] < parts_[i + 1]) {
      throw InvalidArgument("signature parts must be weakly decreasing: " + to_string());
    }
  }
}

Signature::Part Signature::total() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), Part{0});
}

Signature Signature::padded(std::size_t n) const {
  if (!nonnegative()) throw InvalidArgument("cannot zero-pad a signature with negative parts");
  if (n < parts_.size()) throw InvalidArgument("padding length shorter than signature");
  std::vector<Part> out(parts_);
  out.resize(n, 0);
  return Signature(std::move(out));
}

Signature Signature::trimmed() const {
  std::vector<Part> out(parts_);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return Signature(std::move(out));
}

Signature Signature::shifted(Part c) const {
  std::vector<Part> out(parts_);
  for (auto& p : out) p += c;
  return Signature(std::move(out));
}

std::string Signature::to_string() const {
  if (parts_.empty()) return "()";
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) s << (i ? "," : "") << parts_[i];
  s << ')';
  return s.str();
}

GTPath::GTPath(std::vector<Signature> levels) : levels_(std::move(levels)) {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k].length() != k) throw InvalidArgument("GT path level k must have length k");
    if (k > 0 && !is_interlaced(levels_[k - 1], levels_[k])) {
      throw InvalidArgument("GT path levels do not interlace at level " + std::to_string(k));
    }
  }
}

bool is_interlaced(const Signature& mu, const Signature& lam) {
  if (mu.length() + 1 != lam.length()) {
    throw InvalidArgument("interlacing needs lengths N-1 and N, got " +
                          std::to_string(mu.length()) + " and " + std::to_string(lam.length()));
  }
  for (std::size_t i = 0; i < mu.length(); ++i) {
    if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) return false;
  }
  return true;
}

BigInt weyl_dim(const Signature& lam) {
  const std::size_t n = lam.length();
  Rational product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto gap = static_cast<long>(j - i);
      product *= frac(lam[i] - lam[j] + gap, gap);
    }
  }
  if (boost::multiprecision::denominator(product) != 1) {
    throw ComputationFailed("Weyl product did not reduce to an integer for " + lam.to_string());
  }
  return boost::multiprecision::numerator(product);
}

namespace {

// Necessary condition for a chain kappa < ... < mu to exist, where mu has
// length m >= length(kappa) = K: mu_i >= kappa_i >= mu_{i+m-K}.
bool reachable(const Signature& kappa, const Signature& mu) {
  const std::size_t k = kappa.length();
  const std::size_t m = mu.length();
  for (std::size_t i = 0; i < k; ++i) {
    if (mu[i] < kappa[i] || kappa[i] < mu[i + m - k]) return false;
  }
  return true;
}

}  // namespace

BigInt count_paths(const Signature& kappa, const Signature& nu) {
  if (kappa.length() > nu.length()) {
    throw InvalidArgument("count_paths needs length(kappa) <= length(nu)");
  }
  if (kappa.length() == nu.length()) return kappa == nu ? BigInt(1) : BigInt(0);
  if (!reachable(kappa, nu)) return 0;
  BigInt total = 0;
  for (const auto& mu : enumerate_interlacing(nu)) total += count_paths(kappa, mu);
  return total;
}

BigInt sym_dim(const Signature& lam) {
  if (!lam.nonnegative()) throw InvalidArgument("sym_dim needs a partition, got " + lam.to_string());
  const Signature shape = lam.trimmed();
  const std::size_t rows = shape.length();
  BigInt numerator = 1;
  for (Signature::Part k = 2; k <= shape.total(); ++k) numerator *= k;
  BigInt hooks = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (Signature::Part j = 0; j < shape[i]; ++j) {
      Signature::Part below = 0;
      for (std::size_t r = i + 1; r < rows && shape[r] > j; ++r) ++below;
      hooks *= (shape[i] - j - 1) + below + 1;
    }
  }
  return numerator / hooks;
}

std::vector<Signature> enumerate_interlacing(const Signature& nu) {
  const std::size_t n = nu.length();
  if (n == 0) throw InvalidArgument("the empty signature has no predecessors");
  std::vector<Signature> out;
  std::vector<Signature::Part> cur(n - 1);
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i + 1 == n) {
      out.emplace_back(cur);
      return;
    }
    for (auto v = nu[i + 1]; v <= nu[i]; ++v) {
      cur[i] = v;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

std::vector<Signature> partitions_of(std::int64_t n, std::size_t rows) {
  std::vector<Signature> out;
  if (n < 0) return out;
  if (rows == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<Signature::Part> cur(rows, 0);
  std::function<void(std::size_t, std::int64_t, std::int64_t)> fill =
      [&](std::size_t i, std::int64_t remaining, std::int64_t cap) {
        if (remaining == 0) {
          std::fill(cur.begin() + static_cast<long>(i), cur.end(), 0);
          out.emplace_back(cur);
          return;
        }
        if (i == rows) return;
        for (auto v = std::min(cap, remaining); v >= 1; --v) {
          // the remaining rows must be able to absorb what is left
          if (v * static_cast<std::int64_t>(rows - i) < remaining) break;
          cur[i] = v;
          fill(i + 1, remaining - v, v);
        }
      };
  fill(0, n, n);
  return out;
}

}  // namespace plancherel
