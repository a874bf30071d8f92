#pragma once

// Estimators with jackknife standard errors over independent replicas.

#include <cstddef>
#include <span>
#include <vector>

namespace plancherel {

struct Estimate {
  double value = 0;
  double std_error = 0;
  std::size_t n = 0;
};

/// Unbiased sample covariance with delete-1 jackknife standard error (closed form).
Estimate covariance_estimate(std::span<const double> x, std::span<const double> y);

/// E[prod_j (X_j - c_j)] where c_j is either the supplied mean (when
/// `centers` is non-empty) or the sample mean. Standard error from a
/// delete-a-group jackknife with `groups` groups; centering is recomputed on
/// each reduced sample when sample means are used.
Estimate joint_moment_estimate(const std::vector<std::span<const double>>& columns,
                               std::span<const double> centers = {}, std::size_t groups = 100);

/// Sample mean with its standard error.
Estimate mean_estimate(std::span<const double> x);

}  // namespace plancherel
