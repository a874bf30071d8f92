#pragma once

// Traces of principal submatrices of Wigner Hermitian matrices with entry
// normalization E|x_ij|^2 = 1 (no 1/sqrt(M) scaling).

#include "plancherel/statistics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace plancherel {

struct WignerConfig {
  std::int64_t size = 1;                               ///< M
  std::vector<std::vector<std::int64_t>> index_sets;  ///< subsets of {1..M}
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::vector<int> orders{2};

  /// Throws InvalidArgument on empty or out-of-range sets, ResourceLimit when
  /// size * max order exceeds kWignerBudget.
  void validate() const;
};

inline constexpr std::int64_t kWignerBudget = 1 << 15;

/// Hermitian matrix for one replica: the upper triangle is drawn, diagonal
/// N(0, 1), off-diagonal real and imaginary parts N(0, 1/2).
Eigen::MatrixXcd sample_wigner(std::int64_t size, std::uint64_t seed, std::size_t replica);

struct TraceSample {
  std::vector<std::vector<double>> traces;  ///< [set][order], real part
  double max_relative_imag = 0;
};

TraceSample sample_traces(const WignerConfig& config, std::size_t replica);

struct WignerBatch {
  WignerConfig config;
  Eigen::MatrixXd traces;  ///< replicas x (set, order) in set-major order
  double max_relative_imag = 0;

  std::span<const double> column(std::size_t set, std::size_t order_index) const;
};

WignerBatch run_wigner(const WignerConfig& config, int threads = 0);
WignerBatch run_wigner_serial(const WignerConfig& config);

/// Cov(Tr X_B^2, Tr X_B2^2) from entry moments. Only k = 2 is supported.
double exact_low_moment_covariance(std::span<const std::int64_t> b, std::span<const std::int64_t> b2,
                                   int k = 2);

struct OverlapRow {
  double fraction = 0;  ///< |B cap B'| / |B|
  std::int64_t overlap = 0;
  Estimate covariance;
  double exact = 0;
  double ratio = 0;  ///< covariance / exact, NaN when exact is zero
  double ratio_error = 0;
  bool within_error = false;  ///< |covariance - exact| <= 4 standard errors
};

struct OverlapReport {
  std::vector<OverlapRow> rows;
  bool monotone = false;  ///< nondecreasing in the overlap within combined error bars
  double max_relative_imag = 0;
};

/// Sets B_0 = {1..n} and B_c with |B_0 cap B_c| = round(c n), laid out inside {1..M}.
WignerConfig overlap_family(std::int64_t size, std::int64_t set_size, std::span<const double> fractions,
                            std::uint64_t seed, std::size_t replicas);

/// Covariance of Tr X_{B_0}^2 with each Tr X_{B_c}^2 for a config built by overlap_family.
/// Needs at least three overlap levels.
OverlapReport overlap_monotonicity_report(const WignerConfig& config, int threads = 0);

/// Columns r,s,k_r,k_s,setsize_r,setsize_s,overlap,value,error_estimate.
void write_wigner_csv(std::ostream& out, const WignerConfig& config, const OverlapReport& report);

}  // namespace plancherel
