// Acceptance gate: one PASS/FAIL line per criterion. Run a single criterion
// with --criterion N, or all of them without arguments.

#include "plancherel/asymptotics.hpp"
#include "plancherel/gt_core.hpp"
#include "plancherel/plancherel_exact.hpp"
#include "plancherel/rng.hpp"
#include "plancherel/rsk_sampler.hpp"
#include "plancherel/suites.hpp"
#include "plancherel/uea_state.hpp"
#include "plancherel/wigner.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace plancherel;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

// ---------------------------------------------------------------------------

Verdict criterion_1() {
  std::size_t cases = 0, path_bad = 0, branch_bad = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& lam : signatures_up_to(n, 6)) {
      ++cases;
      if (weyl_dim(lam) != count_paths(Signature(), lam)) ++path_bad;
      BigInt sum = 0;
      for (const auto& mu : enumerate_interlacing(lam)) sum += weyl_dim(mu);
      if (sum != weyl_dim(lam)) ++branch_bad;
    }
  }
  return {path_bad == 0 && branch_bad == 0 && cases == 261,
          std::to_string(cases) + " signatures, path mismatches " + std::to_string(path_bad) +
              ", branching mismatches " + std::to_string(branch_bad)};
}

Verdict criterion_2() {
  bool ok = true;
  std::size_t sums_bad = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::int64_t size = 0; size <= 8; ++size) {
      BigInt sum = 0;
      for (const auto& lam : partitions_of(size, n)) sum += sym_dim(lam) * weyl_dim(lam);
      BigInt power = 1;
      for (std::int64_t i = 0; i < size; ++i) power *= static_cast<long>(n);
      if (sum != power) ++sums_bad;
    }
  }
  ok = sums_bad == 0;
  double worst_ratio = 0;  // worst |error| / tolerance over the moment checks
  for (const Rational& t : {frac(1, 4), frac(1, 2)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto table = enumerate_support({t, n, 1e-12});
      const double mass_err = std::abs((table.covered_mass - 1).convert_to<double>());
      const double mass_tol = 1e-12 + table.tail_bound();
      worst_ratio = std::max(worst_ratio, mass_err / mass_tol);

      const Rational tn = t * static_cast<long>(n);
      const auto mean = exact_moment(
          table, [](const Signature& lam) { return shifted_power_sum(1, lam); }, power_sum_growth(1, n));
      const double mean_err = std::abs((mean.value - to_high(tn)).convert_to<double>());
      worst_ratio = std::max(worst_ratio, mean_err / (mean.tail_bound.convert_to<double>() + 1e-25));

      const double c = 1 + to_double(tn);
      const auto var = exact_moment(
          table,
          [&](const Signature& lam) {
            const Rational d = shifted_power_sum(1, lam) - tn;
            return Rational(d * d);
          },
          GrowthBound{c * c, 2});
      const double var_err = std::abs((var.value - to_high(tn)).convert_to<double>());
      worst_ratio = std::max(worst_ratio, var_err / (var.tail_bound.convert_to<double>() + 1e-25));
    }
  }
  ok = ok && worst_ratio <= 1;
  return {ok, "N^n mismatches " + std::to_string(sums_bad) + ", worst error/tolerance " + fmt(worst_ratio)};
}

Verdict criterion_3() {
  constexpr double tol = 1e-10;
  double worst = 0;
  std::size_t entries = 0;
  bool certified = true;
  for (std::size_t n : {1, 2}) {
    const auto lower = enumerate_support({frac(1, 4), n, 1e-12});
    const auto upper = enumerate_support({frac(1, 4), n + 1, 1e-12});
    for (const auto& e : lower.entries) {
      const auto r = coherency_check(lower, upper, e.signature, tol);
      worst = std::max(worst, std::abs((r.lhs - r.rhs).convert_to<double>()));
      certified = certified && r.certified;
      ++entries;
    }
  }
  return {worst <= tol && certified, std::to_string(entries) + " entries, max |lhs - rhs| = " + fmt(worst) +
                                         " (tol 1e-10)" + (certified ? "" : ", truncation not certified")};
}

Verdict criterion_4() {
  const bool e11 = word_state({{1, 1}, {1, 1}}) == TPoly::t() + TPoly::monomial(1, 2);

  CounterRng rng(stream_key(kSeed, {0xC0AA}));
  auto pick = [&](int bound) { return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
  std::size_t comm_bad = 0;
  const int pairs = 250;
  for (int p = 0; p < pairs; ++p) {
    Word u, v;
    const int lu = pick(3) - 1, lv = pick(3) - 1;
    for (int i = 0; i < lu; ++i) u.push_back({pick(3), pick(3)});
    for (int i = 0; i < lv; ++i) v.push_back({pick(3), pick(3)});
    const Generator a{pick(3), pick(3)}, b{pick(3), pick(3)};
    auto around = [&](std::initializer_list<Generator> mid) {
      Word w = u;
      w.insert(w.end(), mid);
      w.insert(w.end(), v.begin(), v.end());
      return word_state(w);
    };
    const TPoly lhs = around({a, b}) - around({b, a});
    TPoly rhs;
    if (a.col == b.row) rhs += around({{a.row, b.col}});
    if (b.col == a.row) rhs -= around({{b.row, a.col}});
    if (!(lhs == rhs)) ++comm_bad;
  }

  double worst = 0;
  bool dual_ok = true;
  for (const Rational& t : {frac(1, 4), frac(1, 2)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<int> idx;
      for (std::size_t i = 1; i <= n; ++i) idx.push_back(static_cast<int>(i));
      const auto table = enumerate_support({t, n, 1e-12});
      for (int k = 1; k <= 3; ++k) {
        const auto state = state_eval(gelfand_invariant(k, idx)).evaluate(t);
        const double nn = static_cast<double>(n);
        const GrowthBound g{nn * std::pow(2.0, nn - 1) * std::pow(nn, k), k};
        const auto expect =
            exact_moment(table, [k](const Signature& lam) { return casimir_eigenvalue(k, lam); }, g);
        const double err = std::abs((to_high(state) - expect.value).convert_to<double>());
        worst = std::max(worst, err);
        dual_ok = dual_ok && err <= 1e-10 + expect.tail_bound.convert_to<double>();
      }
    }
  }
  return {e11 && comm_bad == 0 && dual_ok,
          std::string("<E11 E11> = t + t^2 ") + (e11 ? "holds" : "fails") + ", commutation mismatches " +
              std::to_string(comm_bad) + "/" + std::to_string(pairs) + ", dual-route max error " + fmt(worst) +
              " (tol 1e-10 + tail)"};
}

Verdict criterion_5() {
  constexpr double tol = 1e-6;
  double worst = 0;
  for (const auto [gamma, eta] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{1.0, 2.0}}) {
    RegularFamilyLimit lim;
    lim.gamma = gamma;
    lim.etas = {eta};
    lim.overlaps = Eigen::MatrixXd::Constant(1, 1, eta);
    const auto r = theorem2_covariance(1, 1, lim, 0, 0);
    worst = std::max(worst, std::abs(r.value - gamma * eta));
  }
  return {worst <= tol, "max |Var - gamma eta| = " + fmt(worst) + " (tol 1e-6)"};
}

Verdict criterion_6() {
  constexpr double tol = 1e-12;
  double worst = 0;
  for (int a = 0; a < 50; ++a) {
    const std::complex<double> z = std::polar(0.15 + 0.04 * a, std::numbers::pi * (a + 0.5) / 50.0);
    for (int b = 0; b < 50; ++b) {
      const std::complex<double> w = std::polar(0.17 + 0.039 * b, std::numbers::pi * (b + 0.27) / 50.0);
      const double g = gff_kernel(z, w);
      const double c = kernel_Cij(std::min(std::norm(z), std::norm(w)), z, w);
      worst = std::max(worst, std::abs(c - g) / std::max(1.0, std::abs(g)));
    }
  }
  return {worst <= tol, "max deviation on 2500 points " + fmt(worst) + " (tol 1e-12)"};
}

// Naturals and evens at y = 1, k in {1, 2}, gamma = 1.
struct DeskScenario {
  std::vector<SequenceRule> rules{SequenceRule::identity(), SequenceRule::arithmetic(2, 0)};
  std::vector<std::pair<std::size_t, int>> obs{{0, 1}, {0, 2}, {1, 1}, {1, 2}};
  Eigen::MatrixXd quad;

  DeskScenario() {
    const std::vector<double> levels{1.0, 1.0};
    const auto lim = limit_from_sequences(rules, levels, 1.0);
    const auto d = static_cast<Eigen::Index>(obs.size());
    quad.resize(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = a; b < d; ++b) {
        const auto& oa = obs[static_cast<std::size_t>(a)];
        const auto& ob = obs[static_cast<std::size_t>(b)];
        quad(a, b) = quad(b, a) = theorem2_covariance(oa.second, ob.second, lim, oa.first, ob.first).value;
      }
    }
  }

  BatchResult batch(std::int64_t L) const {
    SamplerConfig sc;
    sc.gamma = 1;
    sc.L = L;
    sc.seed = kSeed;
    sc.replicas = 20000;
    sc.sequences = rules;
    sc.levels = {1.0};
    sc.orders = {1, 2};
    return run_batch(sc);
  }
};

Verdict criterion_7() {
  const DeskScenario sc;
  std::vector<CovarianceRequest> reqs;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
  for (std::size_t a = 0; a < sc.obs.size(); ++a) {
    for (std::size_t b = a; b < sc.obs.size(); ++b) {
      reqs.push_back({sc.obs[a].first, 1.0, sc.obs[a].second, sc.obs[b].first, 1.0, sc.obs[b].second});
      cells.emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  bool within = true;
  std::ostringstream detail;
  double disc25 = 0, disc100 = 0;
  for (std::int64_t L : {25, 100}) {
    const auto est = empirical_covariance(sc.batch(L), reqs);
    double total = 0;
    for (std::size_t q = 0; q < reqs.size(); ++q) {
      const double target = sc.quad(cells[q].first, cells[q].second);
      const double diff = std::abs(est[q].estimate.value - target);
      total += diff;
      if (L == 100) {
        const double tol = std::max(4 * est[q].estimate.std_error, 0.1 * std::abs(target));
        if (diff > tol) within = false;
        detail << ' ' << fmt(est[q].estimate.value) << '/' << fmt(target);
      }
    }
    (L == 25 ? disc25 : disc100) = total;
  }
  return {within && disc100 <= disc25, "L=100 empirical/quadrature:" + detail.str() + "; discrepancy L=25 " +
                                           fmt(disc25) + ", L=100 " + fmt(disc100)};
}

Verdict criterion_8() {
  const DeskScenario sc;
  const auto batch = sc.batch(100);
  const Eigen::MatrixXd z = batch.scaled_centered();
  const auto n = static_cast<std::size_t>(z.rows());
  std::vector<std::size_t> col;
  for (const auto& [i, k] : sc.obs) col.push_back(batch.index_of(i, 1.0, k));
  std::size_t bad3 = 0, bad4 = 0, n3 = 0, n4 = 0;
  double worst = 0;  // |mc - prediction| in standard errors
  auto visit = [&](const std::vector<int>& idx) {
    std::vector<std::span<const double>> cols;
    for (int a : idx) cols.emplace_back(z.col(static_cast<Eigen::Index>(col[static_cast<std::size_t>(a)])).data(), n);
    const auto est = joint_moment_estimate(cols);
    const double target = gaussian_joint_prediction(sc.quad, idx);
    const double sig = std::abs(est.value - target) / est.std_error;
    worst = std::max(worst, sig);
    const bool ok = sig <= 4;
    if (idx.size() == 3) {
      ++n3;
      bad3 += !ok;
    } else {
      ++n4;
      bad4 += !ok;
    }
  };
  const int d = static_cast<int>(sc.obs.size());
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      for (int c = b; c < d; ++c) {
        visit({a, b, c});
        for (int e = c; e < d; ++e) visit({a, b, c, e});
      }
  return {bad3 == 0 && bad4 == 0, "third moments outside 4 SE: " + std::to_string(bad3) + "/" + std::to_string(n3) +
                                      ", fourth: " + std::to_string(bad4) + "/" + std::to_string(n4) +
                                      ", worst deviation " + fmt(worst) + " SE"};
}

Verdict criterion_9() {
  const StateFactor x{2, {1, 2}}, y{2, {2, 3}};
  std::vector<double> d;
  std::vector<double> d4;
  std::ostringstream detail;
  for (double L : {4.0, 8.0, 16.0, 32.0}) {
    const auto xy = ordered_centered_state({x, y}, L, 1.0);
    const auto yx = ordered_centered_state({y, x}, L, 1.0);
    d.push_back(abs(xy - yx).convert_to<double>());
    const auto xyxy = ordered_centered_state({x, y, x, y}, L, 1.0);
    const auto xxyy = ordered_centered_state({x, x, y, y}, L, 1.0);
    d4.push_back(abs(xyxy - xxyy).convert_to<double>());
    detail << " D(" << L << ")=" << fmt(d.back());
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) decreasing = decreasing && d[i + 1] < d[i];
  const bool ratio = d.back() < 0.25 * d.front();
  std::cout << "  supplementary |<XYXY> - <XXYY>|:";
  for (double v : d4) std::cout << ' ' << fmt(v);
  std::cout << '\n';
  return {decreasing && ratio, "D(L) = |<XY> - <YX>|:" + detail.str() +
                                   "; strictly decreasing " + (decreasing ? "yes" : "no") +
                                   ", D(32)/D(4) < 1/4 " + (ratio ? "yes" : "no")};
}

Verdict criterion_10() {
  const std::vector<SequenceRule> base{SequenceRule::identity(), SequenceRule::arithmetic(2, 0),
                                       SequenceRule::arithmetic(2, 1), SequenceRule::block_swap()};
  std::vector<SequenceRule> rules;
  std::vector<double> levels;
  for (double y : {1.0, 2.0}) {
    for (const auto& r : base) {
      rules.push_back(r);
      levels.push_back(y);
    }
  }
  const auto lim = limit_from_sequences(rules, levels, 1.0);
  std::vector<Probe> probes;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (int k : {1, 2}) probes.push_back({r, k});
  }
  const auto rep = pd_check(lim, probes);
  return {rep.min_eigenvalue >= -1e-9 * rep.norm,
          std::to_string(probes.size()) + " probes, min eigenvalue " + fmt(rep.min_eigenvalue) + ", norm " +
              fmt(rep.norm) + " (floor -1e-9 * norm)"};
}

Verdict criterion_11() {
  SamplerConfig sc;
  sc.gamma = 1;
  sc.L = 10;
  sc.seed = kSeed;
  sc.replicas = 100;
  sc.sequences = {SequenceRule::identity()};
  sc.levels = {1.0};
  BatchOptions o;
  o.keep_samples = true;
  const auto batch = run_batch(sc, o);
  std::size_t bad = 0, checked = 0;
  for (const auto& s : batch.samples) {
    for (int k = 0; k <= 3; ++k) {
      const auto id = moment_identity_check(s, 0, 0, sc.L, k);
      ++checked;
      if (id.lhs != id.rhs) ++bad;
    }
  }
  return {bad == 0 && checked == 400, std::to_string(bad) + " mismatches over " + std::to_string(checked) +
                                          " (shape, k) cases"};
}

Verdict criterion_12() {
  const std::vector<double> fractions{0, 0.25, 0.5, 0.75, 1};
  const auto cfg = overlap_family(400, 200, fractions, kSeed, 2000);
  const auto rep = overlap_monotonicity_report(cfg);
  bool ok = rep.rows.size() == 5;
  std::ostringstream detail;
  for (const auto& r : rep.rows) {
    ok = ok && r.within_error;
    detail << " d=" << r.overlap << ": " << fmt(r.covariance.value) << "+-" << fmt(r.covariance.std_error) << " vs "
           << fmt(r.exact) << ';';
  }
  ok = ok && rep.rows.front().exact == 0;
  return {ok, "Tr X^2 covariance vs 2 d^2 within 4 SE:" + detail.str()};
}

struct Criterion {
  std::function<Verdict()> run;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance gate"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {criterion_1, 10},  {criterion_2, 30},  {criterion_3, 30},   {criterion_4, 120},
      {criterion_5, 60},  {criterion_6, 1},   {criterion_7, 600},  {criterion_8, 600},
      {criterion_9, 300}, {criterion_10, 120}, {criterion_11, 10}, {criterion_12, 300}};

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= criteria[i].budget_seconds;
    const bool pass = v.pass && in_time;
    all = all && pass;
    std::cout << "criterion " << i + 1 << ' ' << (pass ? "PASS" : "FAIL") << ": " << v.detail << " [" << fmt(secs)
              << " s, budget " << criteria[i].budget_seconds << " s" << (in_time ? "" : ", exceeded") << "]\n";
  }
  return all ? 0 : 1;
}
