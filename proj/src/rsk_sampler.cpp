#include "plancherel/rsk_sampler.hpp"

#include "plancherel/errors.hpp"
#include "plancherel/plancherel_exact.hpp"
#include "plancherel/rng.hpp"

#include "json.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace plancherel {

void SamplerConfig::validate() const {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (L < 1) throw InvalidArgument("L must be a positive integer");
  if (replicas < 1) throw InvalidArgument("replicas must be at least 1");
  if (sequences.empty()) throw InvalidArgument("at least one sequence is required");
  if (levels.empty()) throw InvalidArgument("at least one level is required");
  for (double y : levels) {
    if (!(y >= 0) || !std::isfinite(y)) throw InvalidArgument("levels must be nonnegative");
  }
  if (orders.empty()) throw InvalidArgument("at least one order k is required");
  for (int k : orders) {
    if (k < 1 || k > 8) throw InvalidArgument("orders must lie in 1..8");
  }
  (void)columns();  // resolves every prefix; explicit lists that are too short throw here
}

std::vector<std::int64_t> SamplerConfig::columns() const {
  std::int64_t m_max = 0;
  for (double y : levels) m_max = std::max(m_max, scaled_level(y, L));
  std::set<std::int64_t> all;
  for (const auto& rule : sequences) {
    for (auto v : rule.prefix(m_max, L)) all.insert(v);
  }
  return {all.begin(), all.end()};
}

namespace {

constexpr std::uint64_t kFieldStream = 0xF1E1D;

std::int64_t poisson_count(double rate, CounterRng& rng) {
  if (rate <= 0) return 0;
  std::poisson_distribution<std::int64_t> dist(rate);
  return dist(rng);
}

template <typename Sink>
void draw_column(double rate, std::uint64_t seed, std::uint64_t replica, std::int64_t column,
                 Sink&& sink) {
  CounterRng rng(stream_key(seed, {kFieldStream, replica, static_cast<std::uint64_t>(column)}));
  const auto n = poisson_count(rate, rng);
  for (std::int64_t i = 0; i < n; ++i) sink(rng.uniform());
}

}  // namespace

std::vector<double> sample_column(double rate, std::uint64_t seed, std::uint64_t replica,
                                  std::int64_t column) {
  std::vector<double> times;
  draw_column(rate, seed, replica, column, [&](double t) { times.push_back(t); });
  std::sort(times.begin(), times.end());
  return times;
}

PoissonField sample_field(double rate, std::span<const std::int64_t> columns, std::uint64_t seed,
                          std::size_t replica) {
  if (!(rate >= 0)) throw InvalidArgument("rate must be nonnegative");
  PoissonField field;
  field.rate = rate;
  for (auto c : columns) field.columns[c] = sample_column(rate, seed, replica, c);
  return field;
}

PoissonField sample_field(const SamplerConfig& config, std::size_t replica) {
  const auto cols = config.columns();
  return sample_field(config.rate(), cols, config.seed, replica);
}

// ---------------------------------------------------------------------------
// RSK

RskHistogram::RskHistogram(std::size_t alphabet)
    : alphabet_(alphabet),
      words_((alphabet + 63) / 64),
      counts_(alphabet * alphabet, 0),
      bits_(alphabet * ((alphabet + 63) / 64), 0) {}

void RskHistogram::reset() {
  std::fill(counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(rows_ * alphabet_), 0);
  std::fill(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(rows_ * words_), 0);
  rows_ = 0;
}

void RskHistogram::insert(std::size_t letter) {
  if (letter >= alphabet_) throw InvalidArgument("letter outside the alphabet");
  std::size_t x = letter;
  for (std::size_t r = 0;; ++r) {
    std::int32_t* cnt = counts_.data() + r * alphabet_;
    std::uint64_t* bits = bits_.data() + r * words_;
    // smallest letter strictly greater than x in row r
    std::size_t y = alphabet_;
    std::size_t w = (x + 1) >> 6;
    if (w < words_) {
      std::uint64_t word = bits[w] & (~std::uint64_t{0} << ((x + 1) & 63));
      while (true) {
        if (word) {
          y = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
          break;
        }
        if (++w == words_) break;
        word = bits[w];
      }
    }
    ++cnt[x];
    bits[x >> 6] |= std::uint64_t{1} << (x & 63);
    if (y == alphabet_) {
      rows_ = std::max(rows_, r + 1);
      return;
    }
    if (--cnt[y] == 0) bits[y >> 6] &= ~(std::uint64_t{1} << (y & 63));
    x = y;
  }
}

Signature RskHistogram::shape() const { return restricted_shape(alphabet_); }

Signature RskHistogram::restricted_shape(std::size_t m) const {
  if (m > alphabet_) throw InvalidArgument("restriction beyond the alphabet");
  std::vector<std::int64_t> parts(m, 0);
  for (std::size_t r = 0; r < std::min(rows_, m); ++r) {
    const std::int32_t* cnt = counts_.data() + r * alphabet_;
    std::int64_t s = 0;
    for (std::size_t a = 0; a < m; ++a) s += cnt[a];
    parts[r] = s;
  }
  return Signature(std::move(parts));
}

Signature rsk_shape(std::span<const std::size_t> word, std::size_t alphabet) {
  RskHistogram h(alphabet);
  for (auto x : word) h.insert(x);
  return h.shape();
}

Signature shape_for_subset(const PoissonField& field, std::span<const std::int64_t> columns) {
  if (columns.empty()) throw InvalidArgument("column set must be nonempty");
  std::vector<std::int64_t> sorted(columns.begin(), columns.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::pair<double, std::size_t>> points;
  for (std::size_t rank = 0; rank < sorted.size(); ++rank) {
    auto it = field.columns.find(sorted[rank]);
    if (it == field.columns.end()) {
      throw InvalidArgument("column " + std::to_string(sorted[rank]) + " is not in the field");
    }
    for (double t : it->second) points.emplace_back(t, rank);
  }
  std::sort(points.begin(), points.end());
  RskHistogram h(sorted.size());
  for (const auto& p : points) h.insert(p.second);
  return h.shape();
}

// ---------------------------------------------------------------------------
// Joint sampling

double power_sum_value(int k, const Signature& lam) {
  __extension__ using i128 = __int128;
  i128 total = 0;
  for (std::size_t i = 0; i < lam.length(); ++i) {
    const i128 b = 1 - 2 * static_cast<i128>(i + 1);
    const i128 a = b + 2 * static_cast<i128>(lam[i]);
    i128 pa = 1, pb = 1;
    for (int j = 0; j < k; ++j) {
      pa *= a;
      pb *= b;
    }
    total += pa - pb;
  }
  return std::ldexp(static_cast<double>(total), -k);
}

JointSampler::JointSampler(SamplerConfig config) : config_(std::move(config)) {
  config_.validate();
  for (double y : config_.levels) levels_.push_back(scaled_level(y, config_.L));
  columns_ = config_.columns();
  std::map<std::int64_t, std::int32_t> dense;
  for (std::size_t d = 0; d < columns_.size(); ++d) dense[columns_[d]] = static_cast<std::int32_t>(d);

  auto make_job = [&](const std::vector<std::int64_t>& values) {
    Job job;
    job.letter.assign(columns_.size(), -1);
    std::vector<std::int64_t> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t r = 0; r < sorted.size(); ++r) {
      job.letter[static_cast<std::size_t>(dense.at(sorted[r]))] = static_cast<std::int32_t>(r);
    }
    job.alphabet = sorted.size();
    return job;
  };

  for (std::size_t s = 0; s < config_.sequences.size(); ++s) {
    const auto& rule = config_.sequences[s];
    const std::int64_t m_max = *std::max_element(levels_.begin(), levels_.end());
    const auto values = rule.prefix(m_max, config_.L);
    std::vector<std::int64_t> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    Job shared = make_job(values);
    for (std::size_t li = 0; li < levels_.size(); ++li) {
      const auto m = static_cast<std::size_t>(levels_[li]);
      bool initial = true;
      if (m > 0) {
        const auto mx = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
        initial = mx == sorted[m - 1];
      }
      if (initial) {
        shared.targets.push_back({s, li, m});
      } else {
        Job own = make_job({values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m)});
        own.targets.push_back({s, li, m});
        jobs_.push_back(std::move(own));
      }
    }
    if (!shared.targets.empty()) jobs_.push_back(std::move(shared));
  }
}

JointSampler::Workspace JointSampler::make_workspace() const {
  Workspace ws;
  for (const auto& job : jobs_) ws.histograms.emplace_back(job.alphabet);
  return ws;
}

HeightSample JointSampler::sample(std::size_t replica) const {
  auto ws = make_workspace();
  return sample(replica, ws);
}

HeightSample JointSampler::sample(std::size_t replica, Workspace& ws) const {
  const double rate = config_.rate();
  ws.points.clear();
  for (std::size_t d = 0; d < columns_.size(); ++d) {
    draw_column(rate, config_.seed, replica, columns_[d],
                [&](double t) { ws.points.emplace_back(t, static_cast<std::int32_t>(d)); });
  }
  // dense indices follow natural column order, so this realizes the (time, column) tie-break
  std::sort(ws.points.begin(), ws.points.end());

  const std::size_t ns = config_.sequences.size(), nl = levels_.size();
  HeightSample out;
  out.replica_index = replica;
  out.shapes.assign(ns, std::vector<Signature>(nl));
  out.power_sums.assign(ns, std::vector<std::vector<double>>(nl));

  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    const auto& job = jobs_[j];
    auto& hist = ws.histograms[j];
    hist.reset();
    for (const auto& p : ws.points) {
      const auto letter = job.letter[static_cast<std::size_t>(p.second)];
      if (letter >= 0) hist.insert(static_cast<std::size_t>(letter));
    }
    for (const auto& t : job.targets) out.shapes[t.sequence][t.level] = hist.restricted_shape(t.restrict_to);
  }

  std::vector<std::size_t> order(nl);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t li = 0; li < nl; ++li) {
      for (int k : config_.orders) out.power_sums[s][li].push_back(power_sum_value(k, out.shapes[s][li]));
    }
    for (std::size_t li = 0; li < nl; ++li) order[li] = li;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return levels_[a] < levels_[b]; });
    for (std::size_t q = 0; q + 1 < nl; ++q) {
      const auto a = order[q], b = order[q + 1];
      if (levels_[a] == levels_[b]) continue;
      const auto& small = out.shapes[s][a];
      const auto& big = out.shapes[s][b];
      for (std::size_t r = 0; r < small.length(); ++r) {
        if (small[r] > big[r]) {
          ++out.containment_violations;
          break;
        }
      }
      if (levels_[b] == levels_[a] + 1 && !is_interlaced(small, big)) ++out.interlacing_violations;
    }
  }
  return out;
}

HeightSample sample_joint(const SamplerConfig& config, std::size_t replica) {
  return JointSampler(config).sample(replica);
}

// ---------------------------------------------------------------------------
// Batches

std::optional<double> exact_power_sum_mean(const Rational& t, std::size_t n, int k) {
  if (n == 0) return 0.0;
  if (n > 6) return std::nullopt;
  PlancherelParams params{t, n, 1e-12};
  if (poisson_truncation(to_double(t) * static_cast<double>(n), params.tail_epsilon) > kMaxTruncation) {
    return std::nullopt;
  }
  const auto table = enumerate_support(params);
  const auto res = exact_moment(
      table, [k](const Signature& lam) { return shifted_power_sum(k, lam); }, power_sum_growth(k, n));
  return res.value.convert_to<double>();
}

namespace {

BatchResult prepare(const JointSampler& sampler) {
  BatchResult out;
  out.config = sampler.config();
  const auto& cfg = out.config;
  for (std::size_t s = 0; s < cfg.sequences.size(); ++s) {
    for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
      for (int k : cfg.orders) out.observables.push_back({s, li, k, sampler.level(li)});
    }
  }
  out.raw.resize(static_cast<Eigen::Index>(cfg.replicas), static_cast<Eigen::Index>(out.observables.size()));
  return out;
}

void store(BatchResult& out, std::size_t r, const HeightSample& hs) {
  Eigen::Index o = 0;
  for (const auto& s : hs.power_sums) {
    for (const auto& l : s) {
      for (double v : l) out.raw(static_cast<Eigen::Index>(r), o++) = v;
    }
  }
}

void finish(BatchResult& out, const BatchOptions& options) {
  const auto& cfg = out.config;
  std::map<std::tuple<std::int64_t, int>, std::optional<double>> cache;
  Rational t{cfg.gamma};
  t *= cfg.L;
  out.means.resize(out.observables.size());
  out.centering.resize(out.observables.size());
  for (std::size_t o = 0; o < out.observables.size(); ++o) {
    const auto& ob = out.observables[o];
    std::optional<double> exact;
    if (options.centering == CenteringPolicy::automatic) {
      auto key = std::make_tuple(ob.m, ob.k);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, exact_power_sum_mean(t, static_cast<std::size_t>(ob.m), ob.k)).first;
      }
      exact = it->second;
    }
    if (exact) {
      out.means[o] = *exact;
      out.centering[o] = Centering::exact;
    } else {
      out.means[o] = out.raw.col(static_cast<Eigen::Index>(o)).mean();
      out.centering[o] = Centering::empirical;
    }
  }
}

}  // namespace

BatchResult run_batch_serial(const SamplerConfig& config, const BatchOptions& options) {
  JointSampler sampler(config);
  BatchResult out = prepare(sampler);
  if (options.keep_samples) out.samples.resize(config.replicas);
  auto ws = sampler.make_workspace();
  for (std::size_t r = 0; r < config.replicas; ++r) {
    HeightSample hs = sampler.sample(r, ws);
    store(out, r, hs);
    out.containment_violations += hs.containment_violations;
    out.interlacing_violations += hs.interlacing_violations;
    if (options.keep_samples) out.samples[r] = std::move(hs);
  }
  finish(out, options);
  return out;
}

BatchResult run_batch(const SamplerConfig& config, const BatchOptions& options) {
  JointSampler sampler(config);
  BatchResult out = prepare(sampler);
  if (options.keep_samples) out.samples.resize(config.replicas);
  const auto n = static_cast<std::int64_t>(config.replicas);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::size_t contain = 0, inter = 0;
#pragma omp parallel num_threads(threads) reduction(+ : contain, inter)
  {
    auto ws = sampler.make_workspace();
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t r = 0; r < n; ++r) {
      HeightSample hs = sampler.sample(static_cast<std::size_t>(r), ws);
      store(out, static_cast<std::size_t>(r), hs);
      contain += hs.containment_violations;
      inter += hs.interlacing_violations;
      if (options.keep_samples) out.samples[static_cast<std::size_t>(r)] = std::move(hs);
    }
  }
  out.containment_violations = contain;
  out.interlacing_violations = inter;
  finish(out, options);
  return out;
}

Eigen::MatrixXd BatchResult::scaled_centered() const {
  Eigen::MatrixXd out(raw.rows(), raw.cols());
  for (Eigen::Index o = 0; o < raw.cols(); ++o) {
    const double scale = std::pow(static_cast<double>(config.L), observables[static_cast<std::size_t>(o)].k);
    out.col(o) = (raw.col(o).array() - means[static_cast<std::size_t>(o)]) / scale;
  }
  return out;
}

std::size_t BatchResult::index_of(std::size_t sequence, double y, int k) const {
  for (std::size_t o = 0; o < observables.size(); ++o) {
    const auto& ob = observables[o];
    if (ob.sequence == sequence && ob.k == k && std::abs(config.levels[ob.level] - y) < 1e-12) return o;
  }
  throw InvalidArgument("observable (" + std::to_string(sequence) + ", " + std::to_string(y) + ", " +
                        std::to_string(k) + ") was not sampled");
}

std::vector<CovarianceEntry> empirical_covariance(const BatchResult& batch,
                                                  std::span<const CovarianceRequest> requests) {
  if (batch.raw.rows() < 100) throw InvalidArgument("covariance estimates need at least 100 replicas");
  const Eigen::MatrixXd z = batch.scaled_centered();
  const auto n = static_cast<std::size_t>(z.rows());
  std::vector<CovarianceEntry> out;
  for (const auto& req : requests) {
    const auto a = batch.index_of(req.i, req.y, req.k);
    const auto b = batch.index_of(req.j, req.y2, req.k2);
    std::span<const double> x(z.col(static_cast<Eigen::Index>(a)).data(), n);
    std::span<const double> y(z.col(static_cast<Eigen::Index>(b)).data(), n);
    Estimate e;
    if (batch.centering[a] == Centering::exact && batch.centering[b] == Centering::exact) {
      const std::vector<double> zero{0.0, 0.0};
      e = joint_moment_estimate({x, y}, zero);
    } else {
      e = covariance_estimate(x, y);
    }
    out.push_back({req, e});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moment identity

MomentIdentity moment_identity_check(const Signature& lam, std::int64_t L, int k) {
  if (L < 1) throw InvalidArgument("L must be positive");
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  for (std::size_t i = 0; i < lam.length(); ++i) {
    if (lam[i] < 0) throw InvalidArgument("moment identity needs a nonnegative signature");
  }
  // Jump locations doubled: 2(lam_i - i) + 1 for H, 1 - 2i for the empty reference.
  std::vector<std::int64_t> a, b;
  for (std::size_t i = 0; i < lam.length(); ++i) {
    const auto ii = static_cast<std::int64_t>(i + 1);
    a.push_back(2 * (lam[i] - ii) + 1);
    b.push_back(1 - 2 * ii);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::int64_t> cuts(a);
  cuts.insert(cuts.end(), b.begin(), b.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto at_least = [](const std::vector<std::int64_t>& v, std::int64_t x) {
    return static_cast<std::int64_t>(v.end() - std::lower_bound(v.begin(), v.end(), x));
  };
  auto power = [](const Rational& x, int e) {
    Rational p = 1;
    for (int i = 0; i < e; ++i) p *= x;
    return p;
  };
  const BigInt denom = BigInt(2) * L;
  Rational lhs = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    // on (cuts[c], cuts[c+1]) the integrand is #{a >= right} - #{b >= right}
    const auto value = at_least(a, cuts[c + 1]) - at_least(b, cuts[c + 1]);
    if (value == 0) continue;
    const Rational u = frac(cuts[c], denom), v = frac(cuts[c + 1], denom);
    lhs += Rational(value) * (power(v, k + 1) - power(u, k + 1)) / (k + 1);
  }
  Rational rhs = shifted_power_sum(k + 1, lam);
  rhs /= power(Rational(L), k + 1) * (k + 1);
  return {lhs, rhs};
}

MomentIdentity moment_identity_check(const HeightSample& sample, std::size_t i, std::size_t level,
                                     std::int64_t L, int k) {
  return moment_identity_check(sample.shapes.at(i).at(level), L, k);
}

// ---------------------------------------------------------------------------
// Level chains

LevelChainReport level_chain(const PoissonField& field, const SequenceRule& rule, std::int64_t L,
                             std::int64_t m_max) {
  LevelChainReport rep;
  rep.levels = m_max;
  if (m_max < 1) return rep;
  const auto values = rule.prefix(m_max, L);
  std::vector<std::int64_t> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  // one histogram pass over the full prefix, used for levels that are initial in natural order
  std::vector<std::pair<double, std::size_t>> points;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    auto it = field.columns.find(sorted[r]);
    if (it == field.columns.end()) {
      throw InvalidArgument("column " + std::to_string(sorted[r]) + " is not in the field");
    }
    for (double t : it->second) points.emplace_back(t, r);
  }
  std::sort(points.begin(), points.end());
  RskHistogram hist(sorted.size());
  for (const auto& p : points) hist.insert(p.second);

  Signature prev(std::vector<std::int64_t>{});
  std::int64_t running_max = 0;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    running_max = std::max(running_max, values[static_cast<std::size_t>(m - 1)]);
    const auto mm = static_cast<std::size_t>(m);
    Signature cur = running_max == sorted[mm - 1]
                        ? hist.restricted_shape(mm)
                        : shape_for_subset(field, std::span<const std::int64_t>(values.data(), mm));
    for (std::size_t r = 0; r < prev.length(); ++r) {
      if (prev[r] > cur[r]) {
        ++rep.containment_violations;
        break;
      }
    }
    if (!is_interlaced(prev, cur)) ++rep.interlacing_violations;
    prev = std::move(cur);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Output

std::string dyadic_to_decimal(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  int e = 0;
  while (den > 1 && (den & 1) == 0) {
    den >>= 1;
    ++e;
  }
  if (den != 1) return q.str();
  const bool neg = num < 0;
  if (neg) num = -num;
  for (int i = 0; i < e; ++i) num *= 5;
  std::string digits = num.str();
  if (e > 0) {
    if (digits.size() <= static_cast<std::size_t>(e)) {
      digits.insert(0, static_cast<std::size_t>(e) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(e), ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
  }
  return neg ? "-" + digits : digits;
}

void write_replicas_ndjson(std::ostream& out, const BatchResult& batch) {
  if (batch.samples.empty() && batch.config.replicas > 0) {
    throw InvalidArgument("batch was run without keeping samples");
  }
  for (const auto& hs : batch.samples) {
    nlohmann::json rec;
    rec["replica_index"] = hs.replica_index;
    auto& shapes = rec["shapes"] = nlohmann::json::array();
    auto& sums = rec["power_sums"] = nlohmann::json::array();
    for (const auto& seq : hs.shapes) {
      nlohmann::json sl = nlohmann::json::array(), pl = nlohmann::json::array();
      for (const auto& lam : seq) {
        sl.push_back(std::vector<std::int64_t>(lam.parts().begin(), lam.parts().end()));
        nlohmann::json ks = nlohmann::json::array();
        for (int k : batch.config.orders) ks.push_back(dyadic_to_decimal(shifted_power_sum(k, lam)));
        pl.push_back(std::move(ks));
      }
      shapes.push_back(std::move(sl));
      sums.push_back(std::move(pl));
    }
    out << rec.dump() << '\n';
  }
}

void write_covariance_csv(std::ostream& out, std::span<const CovarianceEntry> entries) {
  out << "i,y,k,j,y2,k2,cov,stderr,n_replicas\n";
  std::ostringstream line;
  for (const auto& e : entries) {
    line.str("");
    line << std::setprecision(17) << e.request.i << ',' << e.request.y << ',' << e.request.k << ','
         << e.request.j << ',' << e.request.y2 << ',' << e.request.k2 << ',' << e.estimate.value
         << ',' << e.estimate.std_error << ',' << e.estimate.n << '\n';
    out << line.str();
  }
}

}  // namespace plancherel
