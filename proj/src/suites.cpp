#include "plancherel/suites.hpp"

#include "plancherel/asymptotics.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/plancherel_exact.hpp"
#include "plancherel/rng.hpp"
#include "plancherel/rsk_sampler.hpp"
#include "plancherel/uea_state.hpp"
#include "plancherel/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace plancherel {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::ofstream open_artifact(const SuiteContext& ctx, RunManifest& m, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream out(ctx.out_dir / name);
  if (!out) throw ResourceLimit("cannot write " + (ctx.out_dir / name).string());
  m.artifacts.push_back(name);
  return out;
}

void extend(std::vector<std::int64_t>& cur, std::size_t n, std::int64_t budget,
            std::int64_t upper, std::vector<Signature>& out) {
  if (cur.size() == n) {
    out.emplace_back(cur);
    return;
  }
  for (std::int64_t v = -budget; v <= std::min(upper, budget); ++v) {
    cur.push_back(v);
    extend(cur, n, budget - std::abs(v), v, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Signature> signatures_up_to(std::size_t n, std::int64_t max_abs) {
  std::vector<Signature> out;
  std::vector<std::int64_t> cur;
  extend(cur, n, max_abs, max_abs, out);
  return out;
}

// ---------------------------------------------------------------------------

void run_exact_check(const SuiteContext& ctx, RunManifest& m) {
  const auto& cfg = ctx.config.exact_check;

  std::size_t path_mismatch = 0, branch_mismatch = 0, path_cases = 0;
  for (std::size_t n = 1; n <= cfg.path_rows; ++n) {
    for (const auto& lam : signatures_up_to(n, cfg.path_size)) {
      ++path_cases;
      if (weyl_dim(lam) != count_paths(Signature(), lam)) ++path_mismatch;
      if (n >= 2) {
        BigInt sum = 0;
        for (const auto& mu : enumerate_interlacing(lam)) sum += weyl_dim(mu);
        if (sum != weyl_dim(lam)) ++branch_mismatch;
      }
    }
  }
  m.add({"weyl_dim equals path count (" + std::to_string(path_cases) + " signatures)", "0 mismatches",
         static_cast<double>(path_mismatch), 0, path_mismatch == 0});
  m.add({"branching identity", "0 mismatches", static_cast<double>(branch_mismatch), 0, branch_mismatch == 0});

  std::size_t weight_mismatch = 0;
  for (std::size_t n = 1; n <= cfg.max_rows; ++n) {
    for (std::int64_t size = 0; size <= cfg.max_size; ++size) {
      BigInt sum = 0;
      for (const auto& lam : partitions_of(size, n)) sum += sym_dim(lam) * weyl_dim(lam);
      BigInt power = 1;
      for (std::int64_t i = 0; i < size; ++i) power *= static_cast<long>(n);
      if (sum != power) ++weight_mismatch;
    }
  }
  m.add({"sum of dim * Dim_N at fixed size equals N^n", "0 mismatches", static_cast<double>(weight_mismatch), 0,
         weight_mismatch == 0});

  for (const auto& t : cfg.t_values) {
    const std::string ts = rational_to_string(t);
    for (std::size_t n = 1; n <= cfg.max_rows; ++n) {
      PlancherelParams params{t, n, 1e-12};
      const auto table = enumerate_support(params);
      const double tail = table.tail_bound();
      const std::string tag = " (t=" + ts + ", N=" + std::to_string(n) + ")";
      const double mass_err = std::abs((table.covered_mass - 1).convert_to<double>());
      m.add({"normalization" + tag, "1", mass_err, 1e-12 + tail, mass_err <= 1e-12 + tail});

      const Rational tn = t * static_cast<long>(n);
      const auto mean = exact_moment(
          table, [](const Signature& lam) { return shifted_power_sum(1, lam); }, power_sum_growth(1, n));
      const double mean_err = std::abs((mean.value - to_high(tn)).convert_to<double>());
      const double mean_tol = mean.tail_bound.convert_to<double>() + 1e-25;
      m.add({"E p_1 = tN" + tag, rational_to_string(tn), mean_err, mean_tol, mean_err <= mean_tol});

      const double c = 1 + to_double(tn);
      const auto var = exact_moment(
          table,
          [&](const Signature& lam) {
            const Rational d = shifted_power_sum(1, lam) - tn;
            return Rational(d * d);
          },
          GrowthBound{c * c, 2});
      const double var_err = std::abs((var.value - to_high(tn)).convert_to<double>());
      const double var_tol = var.tail_bound.convert_to<double>() + 1e-25;
      m.add({"Var p_1 = tN" + tag, rational_to_string(tn), var_err, var_tol, var_err <= var_tol});
    }

    for (std::size_t n : cfg.coherency_rows) {
      if (n == 0) continue;
      const auto lower = enumerate_support({t, n, 1e-12});
      const auto upper = enumerate_support({t, n + 1, 1e-12});
      double worst = 0;
      for (const auto& e : lower.entries) {
        const auto r = coherency_check(lower, upper, e.signature, cfg.tolerance);
        worst = std::max(worst, std::abs((r.lhs - r.rhs).convert_to<double>()));
      }
      m.add({"coherency over " + std::to_string(lower.entries.size()) + " entries (t=" + ts +
                 ", N=" + std::to_string(n) + ")",
             "lhs = rhs", worst, cfg.tolerance, worst <= cfg.tolerance});
    }
  }

  const TPoly e11 = word_state({{1, 1}, {1, 1}});
  m.add({"<E11 E11> = t + t^2", "t + t^2", e11 == TPoly::t() + TPoly::monomial(1, 2) ? 0.0 : 1.0, 0,
         e11 == TPoly::t() + TPoly::monomial(1, 2)});

  // commutation relations: <U(ab - ba)V> = <U [a,b] V>
  CounterRng rng(stream_key(ctx.config.seed, {0xC0AA}));
  auto pick = [&](int bound) { return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
  std::size_t comm_bad = 0;
  const int pairs = 200;
  for (int p = 0; p < pairs; ++p) {
    Word u, v;
    const int lu = pick(3) - 1, lv = pick(3) - 1;
    for (int i = 0; i < lu; ++i) u.push_back({pick(3), pick(3)});
    for (int i = 0; i < lv; ++i) v.push_back({pick(3), pick(3)});
    const Generator a{pick(3), pick(3)}, b{pick(3), pick(3)};
    Word ab = u, ba = u;
    ab.insert(ab.end(), {a, b});
    ba.insert(ba.end(), {b, a});
    ab.insert(ab.end(), v.begin(), v.end());
    ba.insert(ba.end(), v.begin(), v.end());
    const TPoly lhs = word_state(ab) - word_state(ba);
    TPoly rhs;
    auto with = [&](Generator g) {
      Word w = u;
      w.push_back(g);
      w.insert(w.end(), v.begin(), v.end());
      return word_state(w);
    };
    if (a.col == b.row) rhs += with({a.row, b.col});
    if (b.col == a.row) rhs -= with({b.row, a.col});
    if (!(lhs == rhs)) ++comm_bad;
  }
  m.add({"commutation relations on " + std::to_string(pairs) + " random word pairs", "0 mismatches",
         static_cast<double>(comm_bad), 0, comm_bad == 0});

  for (const auto& t : cfg.t_values) {
    for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_rows, 3); ++n) {
      std::vector<int> idx;
      for (std::size_t i = 1; i <= n; ++i) idx.push_back(static_cast<int>(i));
      const auto table = enumerate_support({t, n, 1e-12});
      for (int k = 1; k <= cfg.state_max_k; ++k) {
        const auto state = state_eval(gelfand_invariant(k, idx)).evaluate(t);
        const double nn = static_cast<double>(n);
        const GrowthBound g{nn * std::pow(2.0, nn - 1) * std::pow(nn, k), k};
        const auto expect = exact_moment(
            table, [k](const Signature& lam) { return casimir_eigenvalue(k, lam); }, g);
        const double err = std::abs((to_high(state) - expect.value).convert_to<double>());
        const double tol = cfg.tolerance + expect.tail_bound.convert_to<double>();
        m.add({"<C_" + std::to_string(k) + "> = E eigenvalue (t=" + rational_to_string(t) +
                   ", N=" + std::to_string(n) + ")",
               rational_to_string(state), err, tol, err <= tol});
      }
    }
  }
}

// ---------------------------------------------------------------------------

void run_sample_suite(const SuiteContext& ctx, RunManifest& m) {
  const auto& s = ctx.config.sample;
  SamplerConfig sc;
  sc.gamma = s.gamma;
  sc.L = s.L;
  sc.seed = ctx.config.seed;
  sc.replicas = s.replicas;
  sc.sequences = s.sequences;
  sc.levels = s.levels;
  sc.orders = s.orders;
  BatchOptions opt;
  opt.keep_samples = s.write_replicas || s.identity_checks > 0;
  opt.threads = ctx.threads;
  const auto batch = run_batch(sc, opt);

  nlohmann::json centering = nlohmann::json::array();
  for (std::size_t o = 0; o < batch.observables.size(); ++o) {
    const auto& ob = batch.observables[o];
    centering.push_back({{"sequence", ob.sequence},
                         {"y", sc.levels[ob.level]},
                         {"k", ob.k},
                         {"mean", batch.means[o]},
                         {"centering", batch.centering[o] == Centering::exact ? "exact" : "empirical"}});
  }
  m.parameters["sample_centering"] = centering;

  if (s.write_replicas) {
    auto out = open_artifact(ctx, m, "replicas.ndjson");
    write_replicas_ndjson(out, batch);
  }
  if (batch.raw.rows() >= 100) {
    std::vector<CovarianceRequest> reqs;
    for (std::size_t a = 0; a < batch.observables.size(); ++a) {
      for (std::size_t b = a; b < batch.observables.size(); ++b) {
        const auto& oa = batch.observables[a];
        const auto& ob = batch.observables[b];
        reqs.push_back({oa.sequence, sc.levels[oa.level], oa.k, ob.sequence, sc.levels[ob.level], ob.k});
      }
    }
    const auto cov = empirical_covariance(batch, reqs);
    auto out = open_artifact(ctx, m, "sample_covariance.csv");
    write_covariance_csv(out, cov);
  }

  // Containment is guaranteed only when each new column is a new maximum.
  const bool all_increasing =
      std::all_of(sc.sequences.begin(), sc.sequences.end(), [](const SequenceRule& r) { return r.increasing(); });
  if (all_increasing) {
    m.add({"containment of nested prefix shapes", "0 violations",
           static_cast<double>(batch.containment_violations), 0, batch.containment_violations == 0});
  } else {
    m.add({"containment violations of nested prefix shapes recorded", "recorded",
           static_cast<double>(batch.containment_violations), 0, true});
  }

  const std::size_t chain_replicas = std::min<std::size_t>(10, s.replicas);
  for (std::size_t i = 0; i < sc.sequences.size(); ++i) {
    const auto& rule = sc.sequences[i];
    std::int64_t m_max = 0;
    for (double y : sc.levels) m_max = std::max(m_max, scaled_level(y, sc.L));
    LevelChainReport total;
    for (std::size_t r = 0; r < chain_replicas; ++r) {
      const auto cols = rule.prefix(m_max, sc.L);
      const auto field = sample_field(sc.rate(), cols, sc.seed, r);
      const auto rep = level_chain(field, rule, sc.L, m_max);
      total.containment_violations += rep.containment_violations;
      total.interlacing_violations += rep.interlacing_violations;
    }
    const std::string tag = " along " + rule.name() + " (" + std::to_string(chain_replicas) + " replicas)";
    if (rule.increasing()) {
      m.add({"level-chain containment" + tag, "0 violations", static_cast<double>(total.containment_violations),
             0, total.containment_violations == 0});
      m.add({"level-chain interlacing" + tag, "0 violations", static_cast<double>(total.interlacing_violations),
             0, total.interlacing_violations == 0});
    } else {
      m.add({"level-chain containment violations recorded" + tag, "recorded",
             static_cast<double>(total.containment_violations), 0, true});
      m.add({"level-chain interlacing violations recorded" + tag, "recorded",
             static_cast<double>(total.interlacing_violations), 0, true});
    }
  }

  std::size_t checked = 0, bad = 0;
  for (std::size_t r = 0; r < std::min(s.identity_checks, batch.samples.size()); ++r) {
    for (const auto& seq : batch.samples[r].shapes) {
      for (const auto& lam : seq) {
        for (int k = 0; k <= 3; ++k) {
          const auto id = moment_identity_check(lam, sc.L, k);
          ++checked;
          if (id.lhs != id.rhs) ++bad;
        }
      }
    }
  }
  m.add({"moment identity lhs = rhs on " + std::to_string(checked) + " cases", "0 mismatches",
         static_cast<double>(bad), 0, bad == 0});
}

// ---------------------------------------------------------------------------

void run_covariance_suite(const SuiteContext& ctx, RunManifest& m) {
  const auto& c = ctx.config.covariance;
  std::vector<SequenceRule> rules;
  std::vector<double> levels;
  for (const auto& r : c.sequences) {
    for (double y : c.levels) {
      rules.push_back(r);
      levels.push_back(y);
    }
  }
  const auto limit = limit_from_sequences(rules, levels, c.gamma);
  std::vector<Probe> probes;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (int k : c.orders) probes.push_back({r, k});
  }
  QuadratureOptions qo;
  qo.threads = ctx.threads;
  std::vector<CovarianceRow> rows;
  double worst_err = 0;
  for (std::size_t a = 0; a < probes.size(); ++a) {
    for (std::size_t b = a; b < probes.size(); ++b) {
      const auto res = theorem2_covariance(probes[a].k, probes[b].k, limit, probes[a].r, probes[b].r, c.tol, qo);
      rows.push_back({probes[a].r, probes[b].r, probes[a].k, probes[b].k, res});
      worst_err = std::max(worst_err, res.abs_error_estimate);
      if (probes[a].r == probes[b].r && probes[a].k == 1 && probes[b].k == 1) {
        const double target = c.gamma * limit.etas[probes[a].r];
        const double err = std::abs(res.value - target);
        m.add({"Var of p_1 limit on entry " + std::to_string(probes[a].r), fmt(target), err, 1e-6, err <= 1e-6});
      }
    }
  }
  {
    auto out = open_artifact(ctx, m, "covariance.csv");
    write_covariance_table_csv(out, limit, rows);
  }
  m.add({"quadrature error estimates", "below tol", worst_err, c.tol, worst_err <= c.tol});
  if (probes.size() >= 2) {
    const auto pd = pd_check(limit, probes, c.tol);
    const double floor = -c.pd_tolerance * std::max(pd.norm, 1.0);
    m.add({"Gram matrix minimum eigenvalue", ">= -" + fmt(c.pd_tolerance) + " * norm", pd.min_eigenvalue,
           -floor, pd.min_eigenvalue >= floor});
  }
}

// ---------------------------------------------------------------------------

void run_wigner_suite(const SuiteContext& ctx, RunManifest& m) {
  const auto& w = ctx.config.wigner;
  const auto cfg = overlap_family(w.size, w.set_size, w.fractions, ctx.config.seed, w.replicas);
  const auto rep = overlap_monotonicity_report(cfg, ctx.threads);
  {
    auto out = open_artifact(ctx, m, "wigner.csv");
    write_wigner_csv(out, cfg, rep);
  }
  const double sigma = ctx.config.sigma_gate;
  for (const auto& row : rep.rows) {
    const double diff = std::abs(row.covariance.value - row.exact);
    const double tol = sigma * row.covariance.std_error;
    m.add({"Tr X^2 covariance at overlap " + std::to_string(row.overlap), fmt(row.exact), diff, tol, diff <= tol});
  }
  m.add({"covariance nondecreasing in overlap", "monotone", rep.monotone ? 0.0 : 1.0, 0, rep.monotone});
  m.add({"traces real", "imaginary part below 1e-10", rep.max_relative_imag, 1e-10, rep.max_relative_imag < 1e-10});
}

// ---------------------------------------------------------------------------

void run_verify_suite(const SuiteContext& ctx, RunManifest& m) {
  const auto& v = ctx.config.verify;
  const double sigma = ctx.config.sigma_gate;
  const std::vector<double> lv(v.sequences.size(), v.level);
  const auto limit = limit_from_sequences(v.sequences, lv, v.gamma);

  struct Pair {
    std::size_t i;
    int k;
    std::size_t j;
    int k2;
  };
  std::vector<std::pair<std::size_t, int>> obs;
  for (std::size_t i = 0; i < v.sequences.size(); ++i) {
    for (int k : v.orders) obs.emplace_back(i, k);
  }
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < obs.size(); ++a) {
    for (std::size_t b = a; b < obs.size(); ++b) pairs.push_back({obs[a].first, obs[a].second, obs[b].first, obs[b].second});
  }
  QuadratureOptions qo;
  qo.threads = ctx.threads;
  std::vector<double> quad;
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(obs.size()), static_cast<Eigen::Index>(obs.size()));
  for (std::size_t a = 0; a < obs.size(); ++a) {
    for (std::size_t b = a; b < obs.size(); ++b) {
      const auto r = theorem2_covariance(obs[a].second, obs[b].second, limit, obs[a].first, obs[b].first,
                                         v.quadrature_tol, qo);
      cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = r.value;
      cov(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = r.value;
      quad.push_back(r.value);
    }
  }

  auto table = open_artifact(ctx, m, "convergence.csv");
  table << "L,i,k,j,k2,mc,stderr,quadrature,abs_diff,within\n" << std::setprecision(17);
  std::vector<double> discrepancy;
  BatchResult last;
  for (std::int64_t L : v.L_values) {
    SamplerConfig sc;
    sc.gamma = v.gamma;
    sc.L = L;
    sc.seed = ctx.config.seed;
    sc.replicas = v.replicas;
    sc.sequences = v.sequences;
    sc.levels = {v.level};
    sc.orders = v.orders;
    BatchOptions bo;
    bo.threads = ctx.threads;
    auto batch = run_batch(sc, bo);
    std::vector<CovarianceRequest> reqs;
    for (const auto& p : pairs) reqs.push_back({p.i, v.level, p.k, p.j, v.level, p.k2});
    const auto est = empirical_covariance(batch, reqs);
    double total = 0;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const double diff = std::abs(est[q].estimate.value - quad[q]);
      const double tol = std::max(sigma * est[q].estimate.std_error, v.relative_floor * std::abs(quad[q]));
      total += diff;
      table << L << ',' << pairs[q].i << ',' << pairs[q].k << ',' << pairs[q].j << ',' << pairs[q].k2 << ','
            << est[q].estimate.value << ',' << est[q].estimate.std_error << ',' << quad[q] << ',' << diff << ','
            << (diff <= tol ? "true" : "false") << '\n';
      if (L == v.L_values.back()) {
        m.add({"L=" + std::to_string(L) + " covariance (" + std::to_string(pairs[q].i) + "," +
                   std::to_string(pairs[q].k) + ")x(" + std::to_string(pairs[q].j) + "," +
                   std::to_string(pairs[q].k2) + ")",
               fmt(quad[q]), diff, tol, diff <= tol});
      }
    }
    discrepancy.push_back(total);
    m.parameters["verify_discrepancy"][std::to_string(L)] = total;
    if (L == v.L_values.back()) last = std::move(batch);
  }
  if (discrepancy.size() >= 2) {
    m.add({"discrepancy at largest L no larger than at smallest L", fmt(discrepancy.front()), discrepancy.back(),
           discrepancy.front(), discrepancy.back() <= discrepancy.front()});
  }

  // third and fourth joint moments at the largest L against the Gaussian prediction
  const Eigen::MatrixXd z = last.scaled_centered();
  const auto n = static_cast<std::size_t>(z.rows());
  std::vector<std::size_t> col(obs.size());
  for (std::size_t a = 0; a < obs.size(); ++a) col[a] = last.index_of(obs[a].first, v.level, obs[a].second);
  auto moments = open_artifact(ctx, m, "joint_moments.csv");
  moments << "indices,mc,stderr,gaussian,within\n" << std::setprecision(17);
  std::size_t bad3 = 0, bad4 = 0, n3 = 0, n4 = 0;
  auto visit = [&](std::vector<int> idx) {
    std::vector<std::span<const double>> cols;
    for (int a : idx) cols.emplace_back(z.col(static_cast<Eigen::Index>(col[static_cast<std::size_t>(a)])).data(), n);
    const auto est = joint_moment_estimate(cols);
    const double target = gaussian_joint_prediction(cov, idx);
    const bool ok = std::abs(est.value - target) <= sigma * est.std_error;
    std::string label;
    for (int a : idx) label += (label.empty() ? "" : " ") + std::to_string(a);
    moments << label << ',' << est.value << ',' << est.std_error << ',' << target << ',' << (ok ? "true" : "false")
            << '\n';
    if (idx.size() == 3) {
      ++n3;
      bad3 += !ok;
    } else {
      ++n4;
      bad4 += !ok;
    }
  };
  const int d = static_cast<int>(obs.size());
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      for (int c = b; c < d; ++c) {
        visit({a, b, c});
        for (int e = c; e < d; ++e) visit({a, b, c, e});
      }
  m.add({"third joint moments vanish (" + std::to_string(n3) + ")", "0 outside gate", static_cast<double>(bad3), 0,
         bad3 == 0});
  m.add({"fourth joint moments match Wick (" + std::to_string(n4) + ")", "0 outside gate",
         static_cast<double>(bad4), 0, bad4 == 0});
}

// ---------------------------------------------------------------------------

void write_checks_csv(std::ostream& out, const RunManifest& manifest) {
  out << "name,target,value,tolerance,pass\n" << std::setprecision(17);
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& c : manifest.checks) {
    out << quote(c.name) << ',' << quote(c.target) << ',' << c.value << ',' << c.tolerance << ','
        << (c.pass ? "true" : "false") << '\n';
  }
}

std::string render_report(const RunManifest& m) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : m.checks) passed += c.pass;
  out << "subcommand   " << m.subcommand << '\n'
      << "version      " << m.tool_version << '\n'
      << "timestamp    " << m.timestamp << '\n'
      << "config hash  " << hex64(m.config_hash) << '\n'
      << "seed         " << m.seed << '\n'
      << "checks       " << passed << " / " << m.checks.size() << " passed\n\n";
  for (const auto& c : m.checks) {
    out << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  value=" << fmt(c.value) << " tol=" << fmt(c.tolerance)
        << " target=" << c.target << '\n';
  }
  if (!m.artifacts.empty()) {
    out << "\nartifacts\n";
    for (const auto& a : m.artifacts) out << "  " << a << '\n';
  }
  return out.str();
}

}  // namespace plancherel
