#include "plancherel/statistics.hpp"

#include "plancherel/errors.hpp"

#include <cmath>

namespace plancherel {

Estimate mean_estimate(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("mean estimate needs at least two samples");
  double m = 0;
  for (double v : x) m += v;
  m /= static_cast<double>(n);
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  const double var = ss / static_cast<double>(n - 1);
  return {m, std::sqrt(var / static_cast<double>(n)), n};
}

Estimate covariance_estimate(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw InvalidArgument("covariance inputs differ in length");
  if (n < 3) throw InvalidArgument("covariance estimate needs at least three samples");
  const double dn = static_cast<double>(n);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= dn;
  my /= dn;
  double sxy = 0;
  for (std::size_t i = 0; i < n; ++i) sxy += (x[i] - mx) * (y[i] - my);
  const double cov = sxy / (dn - 1);

  // Leaving out sample i: S'_xy = S_xy - n/(n-1) dx_i dy_i, divided by n-2.
  std::vector<double> loo(n);
  double loo_mean = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    loo[i] = (sxy - dn / (dn - 1) * dx * dy) / (dn - 2);
    loo_mean += loo[i];
  }
  loo_mean /= dn;
  double ss = 0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  return {cov, std::sqrt((dn - 1) / dn * ss), n};
}

namespace {

double moment_on(const std::vector<std::span<const double>>& cols, std::span<const double> centers,
                 std::size_t n, std::size_t skip_lo, std::size_t skip_hi) {
  const std::size_t m = cols.size();
  const double count = static_cast<double>(n - (skip_hi - skip_lo));
  std::vector<double> c(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!centers.empty()) {
      c[j] = centers[j];
      continue;
    }
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= skip_lo && i < skip_hi) continue;
      s += cols[j][i];
    }
    c[j] = s / count;
  }
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= skip_lo && i < skip_hi) continue;
    double p = 1;
    for (std::size_t j = 0; j < m; ++j) p *= cols[j][i] - c[j];
    total += p;
  }
  return total / count;
}

}  // namespace

Estimate joint_moment_estimate(const std::vector<std::span<const double>>& columns,
                               std::span<const double> centers, std::size_t groups) {
  if (columns.empty()) throw InvalidArgument("joint moment needs at least one column");
  const std::size_t n = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw InvalidArgument("joint moment columns differ in length");
  }
  if (!centers.empty() && centers.size() != columns.size()) {
    throw InvalidArgument("one center per column required");
  }
  if (groups < 2 || n < groups) throw InvalidArgument("too few samples for the jackknife");

  const double full = moment_on(columns, centers, n, 0, 0);
  std::vector<double> partial(groups);
  double pmean = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t lo = g * n / groups, hi = (g + 1) * n / groups;
    partial[g] = moment_on(columns, centers, n, lo, hi);
    pmean += partial[g];
  }
  pmean /= static_cast<double>(groups);
  double ss = 0;
  for (double v : partial) ss += (v - pmean) * (v - pmean);
  const double dg = static_cast<double>(groups);
  return {full, std::sqrt((dg - 1) / dg * ss), n};
}

}  // namespace plancherel
