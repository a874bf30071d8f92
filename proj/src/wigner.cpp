#include "plancherel/wigner.hpp"

#include "plancherel/errors.hpp"
#include "plancherel/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>

namespace plancherel {

void WignerConfig::validate() const {
  if (size < 1) throw InvalidArgument("matrix size must be positive");
  if (replicas < 1) throw InvalidArgument("replicas must be at least 1");
  if (index_sets.empty()) throw InvalidArgument("at least one index set is required");
  for (const auto& b : index_sets) {
    if (b.empty()) throw InvalidArgument("index sets must be nonempty");
    std::set<std::int64_t> seen;
    for (auto i : b) {
      if (i < 1 || i > size) throw InvalidArgument("index " + std::to_string(i) + " outside 1..M");
      if (!seen.insert(i).second) throw InvalidArgument("repeated index in a set");
    }
  }
  if (orders.empty()) throw InvalidArgument("at least one order is required");
  int kmax = 0;
  for (int k : orders) {
    if (k < 1) throw InvalidArgument("orders must be at least 1");
    kmax = std::max(kmax, k);
  }
  if (size * kmax > kWignerBudget) {
    throw ResourceLimit("M * max(k) = " + std::to_string(size * kmax) + " exceeds the budget " +
                        std::to_string(kWignerBudget));
  }
}

Eigen::MatrixXcd sample_wigner(std::int64_t size, std::uint64_t seed, std::size_t replica) {
  constexpr std::uint64_t kWignerStream = 0x3161E5;
  CounterRng rng(stream_key(seed, {kWignerStream, replica}));
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd x(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    x(i, i) = standard_normal(rng);
    for (Eigen::Index j = i + 1; j < size; ++j) {
      const double re = s * standard_normal(rng);
      const double im = s * standard_normal(rng);
      x(i, j) = {re, im};
      x(j, i) = {re, -im};
    }
  }
  return x;
}

namespace {

std::complex<double> trace_power(const Eigen::MatrixXcd& a, int k) {
  if (k == 1) return a.trace();
  // Tr A^k = sum_ij (A^p)_ij (A^q)_ji with p = floor(k/2), q = k - p
  const int p = k / 2, q = k - p;
  Eigen::MatrixXcd ap = a;
  for (int i = 1; i < p; ++i) ap = ap * a;
  Eigen::MatrixXcd aq = ap;
  if (q > p) aq = ap * a;
  return (ap.array() * aq.transpose().array()).sum();
}

TraceSample traces_of(const WignerConfig& config, const Eigen::MatrixXcd& x) {
  TraceSample out;
  for (const auto& b : config.index_sets) {
    const auto n = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        sub(i, j) = x(b[static_cast<std::size_t>(i)] - 1, b[static_cast<std::size_t>(j)] - 1);
      }
    }
    std::vector<double> row;
    for (int k : config.orders) {
      const auto tr = trace_power(sub, k);
      row.push_back(tr.real());
      const double scale = std::max(1.0, std::abs(tr));
      out.max_relative_imag = std::max(out.max_relative_imag, std::abs(tr.imag()) / scale);
    }
    out.traces.push_back(std::move(row));
  }
  return out;
}

WignerBatch prepare(const WignerConfig& config) {
  config.validate();
  WignerBatch out;
  out.config = config;
  out.traces.resize(static_cast<Eigen::Index>(config.replicas),
                    static_cast<Eigen::Index>(config.index_sets.size() * config.orders.size()));
  return out;
}

void store(WignerBatch& out, std::size_t r, const TraceSample& s) {
  Eigen::Index c = 0;
  for (const auto& row : s.traces) {
    for (double v : row) out.traces(static_cast<Eigen::Index>(r), c++) = v;
  }
}

}  // namespace

TraceSample sample_traces(const WignerConfig& config, std::size_t replica) {
  config.validate();
  return traces_of(config, sample_wigner(config.size, config.seed, replica));
}

std::span<const double> WignerBatch::column(std::size_t set, std::size_t order_index) const {
  const auto c = static_cast<Eigen::Index>(set * config.orders.size() + order_index);
  return {traces.col(c).data(), static_cast<std::size_t>(traces.rows())};
}

WignerBatch run_wigner_serial(const WignerConfig& config) {
  WignerBatch out = prepare(config);
  for (std::size_t r = 0; r < config.replicas; ++r) {
    const auto s = traces_of(config, sample_wigner(config.size, config.seed, r));
    store(out, r, s);
    out.max_relative_imag = std::max(out.max_relative_imag, s.max_relative_imag);
  }
  return out;
}

WignerBatch run_wigner(const WignerConfig& config, int threads) {
  WignerBatch out = prepare(config);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(config.replicas);
  double imag = 0;
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt) reduction(max : imag)
  for (std::int64_t r = 0; r < n; ++r) {
    const auto s = traces_of(config, sample_wigner(config.size, config.seed, static_cast<std::size_t>(r)));
    store(out, static_cast<std::size_t>(r), s);
    imag = std::max(imag, s.max_relative_imag);
  }
  out.max_relative_imag = imag;
  return out;
}

double exact_low_moment_covariance(std::span<const std::int64_t> b, std::span<const std::int64_t> b2,
                                   int k) {
  if (k != 2) throw InvalidArgument("exact covariance is available for k = 2 only");
  std::set<std::int64_t> first(b.begin(), b.end());
  std::int64_t shared = 0;
  for (auto i : std::set<std::int64_t>(b2.begin(), b2.end())) shared += first.count(i);
  // Tr X_B^2 = sum_i x_ii^2 + 2 sum_{i<j} |x_ij|^2; Var(x_ii^2) = 2, Var(2|x_ij|^2) = 4
  const double d = static_cast<double>(shared);
  return 2 * d + 4 * d * (d - 1) / 2;
}

WignerConfig overlap_family(std::int64_t size, std::int64_t set_size, std::span<const double> fractions,
                            std::uint64_t seed, std::size_t replicas) {
  if (set_size < 1) throw InvalidArgument("set size must be positive");
  if (2 * set_size > size) throw InvalidArgument("overlap family needs M >= 2 * set size");
  WignerConfig cfg;
  cfg.size = size;
  cfg.seed = seed;
  cfg.replicas = replicas;
  cfg.orders = {2};
  std::vector<std::int64_t> base(static_cast<std::size_t>(set_size));
  for (std::int64_t i = 0; i < set_size; ++i) base[static_cast<std::size_t>(i)] = i + 1;
  cfg.index_sets.push_back(base);
  for (double c : fractions) {
    if (!(c >= 0 && c <= 1)) throw InvalidArgument("overlap fractions must lie in [0, 1]");
    const auto d = static_cast<std::int64_t>(std::llround(c * static_cast<double>(set_size)));
    std::vector<std::int64_t> b;
    for (std::int64_t i = 0; i < set_size; ++i) b.push_back(set_size - d + 1 + i);
    cfg.index_sets.push_back(std::move(b));
  }
  return cfg;
}

OverlapReport overlap_monotonicity_report(const WignerConfig& config, int threads) {
  if (config.index_sets.size() < 4) throw InvalidArgument("need at least three overlap levels");
  const auto it = std::find(config.orders.begin(), config.orders.end(), 2);
  if (it == config.orders.end()) throw InvalidArgument("order 2 must be configured");
  const auto oi = static_cast<std::size_t>(it - config.orders.begin());
  const auto batch = run_wigner(config, threads);
  OverlapReport rep;
  rep.max_relative_imag = batch.max_relative_imag;
  const auto& base = config.index_sets.front();
  const auto x = batch.column(0, oi);
  for (std::size_t s = 1; s < config.index_sets.size(); ++s) {
    const auto& b = config.index_sets[s];
    OverlapRow row;
    std::set<std::int64_t> first(base.begin(), base.end());
    for (auto i : b) row.overlap += static_cast<std::int64_t>(first.count(i));
    row.fraction = static_cast<double>(row.overlap) / static_cast<double>(base.size());
    row.covariance = covariance_estimate(x, batch.column(s, oi));
    row.exact = exact_low_moment_covariance(base, b, 2);
    row.within_error = std::abs(row.covariance.value - row.exact) <= 4 * row.covariance.std_error;
    if (row.exact != 0) {
      row.ratio = row.covariance.value / row.exact;
      row.ratio_error = row.covariance.std_error / row.exact;
    } else {
      row.ratio = std::nan("");
    }
    rep.rows.push_back(row);
  }
  std::vector<OverlapRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.overlap < b.overlap; });
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double tol = 4 * std::hypot(sorted[i].covariance.std_error, sorted[i + 1].covariance.std_error);
    if (sorted[i + 1].covariance.value < sorted[i].covariance.value - tol) rep.monotone = false;
  }
  return rep;
}

void write_wigner_csv(std::ostream& out, const WignerConfig& config, const OverlapReport& report) {
  out << "r,s,k_r,k_s,setsize_r,setsize_s,overlap,value,error_estimate\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out << 0 << ',' << i + 1 << ",2,2," << config.index_sets.front().size() << ','
        << config.index_sets.at(i + 1).size() << ',' << row.overlap << ',' << row.covariance.value << ','
        << row.covariance.std_error << '\n';
  }
}

}  // namespace plancherel
