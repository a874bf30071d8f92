#pragma once

// Monte Carlo realization of coupled height functions. Each column of U(inf)
// carries an independent Poisson(gamma L) set of uniform timestamps; the shape
// attached to a finite column set I is the RSK shape of the time-ordered word of
// column ranks within I.

#include "plancherel/gt_core.hpp"
#include "plancherel/numeric.hpp"
#include "plancherel/sequences.hpp"
#include "plancherel/statistics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <ostream>
#include <span>
#include <vector>

namespace plancherel {

struct PoissonField {
  double rate = 0;
  std::map<std::int64_t, std::vector<double>> columns;  ///< sorted timestamps in [0, 1)
};

struct SamplerConfig {
  double gamma = 1;
  std::int64_t L = 1;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::vector<SequenceRule> sequences{SequenceRule::identity()};
  std::vector<double> levels{1.0};  ///< y values; the level is floor(y L)
  std::vector<int> orders{1};       ///< k of the recorded shifted power sums

  void validate() const;
  double rate() const { return gamma * static_cast<double>(L); }
  /// Union of all columns used by the configured sequences and levels, ascending.
  std::vector<std::int64_t> columns() const;
};

/// Sorted timestamps of one column; depends only on (rate, seed, replica, column).
std::vector<double> sample_column(double rate, std::uint64_t seed, std::uint64_t replica,
                                  std::int64_t column);

PoissonField sample_field(const SamplerConfig& config, std::size_t replica);
PoissonField sample_field(double rate, std::span<const std::int64_t> columns, std::uint64_t seed,
                          std::size_t replica);

/// RSK row insertion keeping each row as a histogram of letters, so that shapes
/// of the restriction to letters < m are available for every m.
class RskHistogram {
 public:
  explicit RskHistogram(std::size_t alphabet);

  void reset();
  void insert(std::size_t letter);
  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t rows() const noexcept { return rows_; }
  /// Shape padded to the alphabet size.
  Signature shape() const;
  /// Shape of the insertion tableau restricted to letters < m, padded to length m.
  Signature restricted_shape(std::size_t m) const;

 private:
  std::size_t alphabet_;
  std::size_t words_;
  std::size_t rows_ = 0;
  std::vector<std::int32_t> counts_;
  std::vector<std::uint64_t> bits_;
};

/// RSK shape of a word over letters 0..alphabet-1, padded to `alphabet`.
Signature rsk_shape(std::span<const std::size_t> word, std::size_t alphabet);

/// Shape attached to the column set I (every column must be present in the field).
Signature shape_for_subset(const PoissonField& field, std::span<const std::int64_t> columns);

struct HeightSample {
  std::size_t replica_index = 0;
  std::vector<std::vector<Signature>> shapes;                  ///< [sequence][level]
  std::vector<std::vector<std::vector<double>>> power_sums;    ///< [sequence][level][order]
  std::size_t containment_violations = 0;  ///< guaranteed zero only for increasing rules
  std::size_t interlacing_violations = 0;  ///< only level pairs m, m+1 are compared
};

/// Resolved sampling plan; reusable across replicas and threads.
class JointSampler {
 public:
  /// One RSK pass: a letter assignment over the dense column list and the
  /// (sequence, level) shapes read off from it by restriction.
  struct Job {
    std::vector<std::int32_t> letter;  ///< per dense column, -1 when unused
    std::size_t alphabet = 0;
    struct Target {
      std::size_t sequence = 0;
      std::size_t level = 0;
      std::size_t restrict_to = 0;
    };
    std::vector<Target> targets;
  };

  /// Per-thread scratch space.
  struct Workspace {
    std::vector<std::pair<double, std::int32_t>> points;
    std::vector<RskHistogram> histograms;
  };

  explicit JointSampler(SamplerConfig config);

  const SamplerConfig& config() const noexcept { return config_; }
  std::int64_t level(std::size_t level_index) const { return levels_.at(level_index); }
  const std::vector<std::int64_t>& columns() const noexcept { return columns_; }

  Workspace make_workspace() const;
  HeightSample sample(std::size_t replica) const;
  HeightSample sample(std::size_t replica, Workspace& ws) const;

 private:
  SamplerConfig config_;
  std::vector<std::int64_t> levels_;
  std::vector<std::int64_t> columns_;
  std::vector<Job> jobs_;
};

HeightSample sample_joint(const SamplerConfig& config, std::size_t replica);

/// Exact shifted power sum as a double (exact while the value fits in 53 bits).
double power_sum_value(int k, const Signature& lam);

struct Observable {
  std::size_t sequence = 0;
  std::size_t level = 0;  ///< index into SamplerConfig::levels
  int k = 1;
  std::int64_t m = 0;  ///< floor(y L)
};

enum class Centering { exact, empirical };
enum class CenteringPolicy { automatic, empirical_only };

struct BatchOptions {
  CenteringPolicy centering = CenteringPolicy::automatic;
  bool keep_samples = false;
  int threads = 0;  ///< 0 keeps the OpenMP default
};

struct BatchResult {
  SamplerConfig config;
  std::vector<Observable> observables;
  Eigen::MatrixXd raw;  ///< replicas x observables, p_k values
  std::vector<double> means;
  std::vector<Centering> centering;
  std::vector<HeightSample> samples;  ///< filled when keep_samples
  std::size_t containment_violations = 0;
  std::size_t interlacing_violations = 0;

  /// (p_k - mean) / L^k for every replica and observable.
  Eigen::MatrixXd scaled_centered() const;
  /// Index of observable (sequence, level value y, k); throws if absent.
  std::size_t index_of(std::size_t sequence, double y, int k) const;
};

/// Parallel over replicas; results are identical to run_batch_serial.
BatchResult run_batch(const SamplerConfig& config, const BatchOptions& options = {});
BatchResult run_batch_serial(const SamplerConfig& config, const BatchOptions& options = {});

/// Exact E p_k at level N and parameter t, when a measure table is affordable.
std::optional<double> exact_power_sum_mean(const Rational& t, std::size_t n, int k);

struct CovarianceRequest {
  std::size_t i = 0;
  double y = 1;
  int k = 1;
  std::size_t j = 0;
  double y2 = 1;
  int k2 = 1;
};

struct CovarianceEntry {
  CovarianceRequest request;
  Estimate estimate;
};

/// Covariances of the scaled centered power sums with jackknife errors.
/// Needs at least 100 replicas.
std::vector<CovarianceEntry> empirical_covariance(const BatchResult& batch,
                                                  std::span<const CovarianceRequest> requests);

/// Both sides as rational multiples of sqrt(pi).
struct MomentIdentity {
  Rational lhs;
  Rational rhs;
};

/// lhs = int x^k (H(Lx) - H_empty(Lx)) dx integrated piecewise over the jumps,
/// rhs = L^{-(k+1)} / (k+1) * p_{k+1}(lam).
MomentIdentity moment_identity_check(const Signature& lam, std::int64_t L, int k);
MomentIdentity moment_identity_check(const HeightSample& sample, std::size_t i,
                                     std::size_t level, std::int64_t L, int k);

struct LevelChainReport {
  std::int64_t levels = 0;
  std::size_t containment_violations = 0;
  std::size_t interlacing_violations = 0;
};

/// Shapes of A_m for m = 1..m_max on one field, compared consecutively.
LevelChainReport level_chain(const PoissonField& field, const SequenceRule& rule,
                             std::int64_t L, std::int64_t m_max);

/// One JSON object per line: replica_index, shapes, power_sums (decimal strings).
void write_replicas_ndjson(std::ostream& out, const BatchResult& batch);
/// Columns i,y,k,j,y2,k2,cov,stderr,n_replicas.
void write_covariance_csv(std::ostream& out, std::span<const CovarianceEntry> entries);

/// Exact decimal expansion of a rational with a power-of-two denominator.
std::string dyadic_to_decimal(const Rational& q);

}  // namespace plancherel
