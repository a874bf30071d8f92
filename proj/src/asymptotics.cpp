#include "plancherel/asymptotics.hpp"

#include "plancherel/errors.hpp"
#include "plancherel/uea_state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>

namespace plancherel {

void RegularFamilyLimit::validate() const {
  if (!(gamma > 0)) throw InvalidArgument("gamma must be positive");
  const auto n = static_cast<Eigen::Index>(etas.size());
  if (overlaps.rows() != n || overlaps.cols() != n) {
    throw InvalidArgument("overlap matrix must be square of size |etas|");
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const double er = etas[static_cast<std::size_t>(r)];
    if (!(er > 0)) throw InvalidArgument("eta values must be positive");
    if (std::abs(overlaps(r, r) - er) > 1e-12 * er) throw InvalidArgument("c_rr must equal eta_r");
    for (Eigen::Index s = 0; s < n; ++s) {
      const double c = overlaps(r, s);
      const double es = etas[static_cast<std::size_t>(s)];
      if (c < 0) throw InvalidArgument("overlaps must be nonnegative");
      if (std::abs(c - overlaps(s, r)) > 1e-12 * std::max(1.0, c)) {
        throw InvalidArgument("overlap matrix must be symmetric");
      }
      if (c > std::min(er, es) * (1 + 1e-12)) throw InvalidArgument("c_rs exceeds min(eta_r, eta_s)");
    }
  }
}

// ---------------------------------------------------------------------------
// alpha

double alpha_finite_L(const SequenceRule& a, const SequenceRule& b, double x, double y,
                      std::int64_t L) {
  if (L < 1) throw InvalidArgument("finite-L alpha needs L >= 1");
  auto pa = a.prefix(scaled_level(x, L), L);
  auto pb = b.prefix(scaled_level(y, L), L);
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  std::vector<std::int64_t> both;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(both));
  return static_cast<double>(both.size()) / static_cast<double>(L);
}

namespace {

double segment_overlap(const DensitySegment& s, const DensitySegment& t) {
  const double len = std::min(s.hi, t.hi) - std::max(s.lo, t.lo);
  if (len <= 0) return 0;
  const std::int64_t g = std::gcd(s.modulus, t.modulus);
  if ((s.residue - t.residue) % g != 0) return 0;
  const double lcm = static_cast<double>(s.modulus / g) * static_cast<double>(t.modulus);
  return len / lcm;
}

}  // namespace

AlphaValue eval_alpha(const SequenceRule& a, const SequenceRule& b, double x, double y,
                      AlphaMode mode, std::int64_t L) {
  if (!(x > 0) || !(y > 0)) throw InvalidArgument("alpha needs x, y > 0");
  if (mode == AlphaMode::finite_L) return {alpha_finite_L(a, b, x, y, L), false};
  const auto sa = a.limit_segments(x);
  const auto sb = b.limit_segments(y);
  if (!sa || !sb) {
    if (L < 1) throw InvalidArgument("explicit rules need a positive L for the counting fallback");
    return {alpha_finite_L(a, b, x, y, L), true};
  }
  double total = 0;
  for (const auto& s : *sa) {
    for (const auto& t : *sb) total += segment_overlap(s, t);
  }
  return {total, false};
}

// ---------------------------------------------------------------------------
// kernels

double kernel_Cij(double alpha, std::complex<double> z, std::complex<double> w) {
  const double num = std::abs(alpha - z * w);
  const double den = std::abs(alpha - z * std::conj(w));
  return std::log(num / den) / (2 * std::numbers::pi);
}

double gff_kernel(std::complex<double> z, std::complex<double> w) {
  return -std::log(std::abs(z - w) / std::abs(z - std::conj(w))) / (2 * std::numbers::pi);
}

namespace {

struct ContourPair {
  double gamma;
  double rr, rs;  // radii
  double alpha;   // c / gamma
};

// (1/2pi) ln|(alpha - zw)/(alpha - z conj w)| via
// |alpha - R_r R_s e^{i psi}|^2 = (alpha - R_r R_s)^2 + 4 alpha R_r R_s sin^2(psi/2).
double kernel_angles(const ContourPair& p, double theta, double phi, double diff) {
  if (p.alpha == 0) return 0;
  const double prod = p.rr * p.rs;
  const double gap = (p.alpha - prod) * (p.alpha - prod);
  const double s_plus = std::sin(0.5 * (theta + phi));
  const double s_minus = std::sin(0.5 * diff);
  const double num = gap + 4 * p.alpha * prod * s_plus * s_plus;
  const double den = gap + 4 * p.alpha * prod * s_minus * s_minus;
  return std::log(num / den) / (4 * std::numbers::pi);
}

double ipow(double x, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// int int x(z)^a x(w)^b C dx(z) dx(w) over the two semicircles
SquareIntegrand moment_integrand(ContourPair p, int a, int b) {
  return [p, a, b](double theta, double phi, double diff) {
    const double xz = p.gamma * (1 - 2 * p.rr * std::cos(theta));
    const double xw = p.gamma * (1 - 2 * p.rs * std::cos(phi));
    const double dz = 2 * p.gamma * p.rr * std::sin(theta);
    const double dw = 2 * p.gamma * p.rs * std::sin(phi);
    return ipow(xz, a) * ipow(xw, b) * kernel_angles(p, theta, phi, diff) * dz * dw;
  };
}

CovarianceResult theorem2_impl(int k_r, int k_s, const RegularFamilyLimit& limit, std::size_t r,
                               std::size_t s, double tol, QuadratureOptions options) {
  if (k_r < 1 || k_s < 1) throw InvalidArgument("orders must be at least 1");
  limit.validate();
  if (r >= limit.etas.size() || s >= limit.etas.size()) throw InvalidArgument("index out of range");
  const double c = limit.overlaps(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
  const std::size_t cells_hint = 0;
  if (c == 0) return {0.0, 0.0, cells_hint};
  ContourPair p{limit.gamma, std::sqrt(limit.etas[r] / limit.gamma),
                std::sqrt(limit.etas[s] / limit.gamma), c / limit.gamma};
  const double pref = static_cast<double>(k_r) * k_s / std::numbers::pi;
  options.tol = tol / pref;
  const auto q = integrate_square_adaptive(moment_integrand(p, k_r - 1, k_s - 1), options);
  return {pref * q.value, pref * q.abs_error_estimate, q.cells};
}

}  // namespace

CovarianceResult theorem2_covariance(int k_r, int k_s, const RegularFamilyLimit& limit,
                                     std::size_t r, std::size_t s, double tol,
                                     const QuadratureOptions& options) {
  QuadratureOptions o = options;
  o.parallel = true;
  return theorem2_impl(k_r, k_s, limit, r, s, tol, o);
}

CovarianceResult theorem2_covariance_serial(int k_r, int k_s, const RegularFamilyLimit& limit,
                                            std::size_t r, std::size_t s, double tol) {
  QuadratureOptions o;
  o.parallel = false;
  return theorem2_impl(k_r, k_s, limit, r, s, tol, o);
}

MomentCovariance prop1_moment_covariance(double y, int k, double y2, int k2, double gamma,
                                         const AlphaFunction& alpha_fn, double tol) {
  if (!(y > 0) || !(y2 > 0)) throw InvalidArgument("levels must be positive");
  if (k < 0 || k2 < 0) throw InvalidArgument("moment orders must be nonnegative");
  if (!(gamma > 0)) throw InvalidArgument("gamma must be positive");
  const double alpha = alpha_fn(y, y2);

  MomentCovariance out;
  // direct: contours gamma |z|^2 = y, gamma |w|^2 = y2
  if (alpha != 0) {
    ContourPair p{gamma, std::sqrt(y / gamma), std::sqrt(y2 / gamma), alpha / gamma};
    QuadratureOptions o;
    o.tol = tol;
    const auto q = integrate_square_adaptive(moment_integrand(p, k, k2), o);
    out.direct = {q.value, q.abs_error_estimate, q.cells};
  }

  // via the power-sum covariance: M_{y,k} ~ sqrt(pi)/(k+1) L^{-(k+1)} (p_{k+1} - E p_{k+1})
  RegularFamilyLimit lim;
  lim.gamma = gamma;
  lim.etas = {y, y2};
  lim.overlaps.resize(2, 2);
  lim.overlaps << y, alpha, alpha, y2;
  const double scale = std::numbers::pi / ((k + 1.0) * (k2 + 1.0));
  const auto t2 = theorem2_covariance(k + 1, k2 + 1, lim, 0, 1, tol / scale);
  out.via_theorem2 = {scale * t2.value, scale * t2.abs_error_estimate, t2.quadrature_cells};
  return out;
}

RegularFamilyLimit limit_from_sequences(std::span<const SequenceRule> rules,
                                        std::span<const double> levels, double gamma) {
  if (rules.size() != levels.size()) throw InvalidArgument("one level per sequence required");
  RegularFamilyLimit lim;
  lim.gamma = gamma;
  const auto n = static_cast<Eigen::Index>(rules.size());
  lim.etas.assign(levels.begin(), levels.end());
  lim.overlaps.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      const auto a = eval_alpha(rules[static_cast<std::size_t>(r)], rules[static_cast<std::size_t>(s)],
                                levels[static_cast<std::size_t>(r)], levels[static_cast<std::size_t>(s)]);
      if (a.fell_back) throw InvalidArgument("closed-form overlap unavailable for explicit rules");
      lim.overlaps(r, s) = a.value;
    }
  }
  lim.validate();
  return lim;
}

PdReport pd_check(const RegularFamilyLimit& limit, std::span<const Probe> probes, double tol) {
  if (probes.size() < 2) throw InvalidArgument("pd_check needs at least two probes");
  const auto n = static_cast<Eigen::Index>(probes.size());
  PdReport rep;
  rep.gram.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const auto& pa = probes[static_cast<std::size_t>(a)];
      const auto& pb = probes[static_cast<std::size_t>(b)];
      const auto res = theorem2_covariance(pa.k, pb.k, limit, pa.r, pb.r, tol);
      rep.gram(a, b) = rep.gram(b, a) = res.value;
      rep.max_abs_error = std::max(rep.max_abs_error, res.abs_error_estimate);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rep.gram, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = eig.eigenvalues().minCoeff();
  rep.norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  return rep;
}

double gaussian_joint_prediction(const Eigen::MatrixXd& cov, std::span<const int> indices) {
  return wick_moment(cov, indices);
}

void write_covariance_table_csv(std::ostream& out, const RegularFamilyLimit& limit,
                                std::span<const CovarianceRow> rows) {
  out << "r,s,k_r,k_s,eta_r,eta_s,c_rs,gamma,value,error_estimate\n";
  out << std::setprecision(17);
  for (const auto& row : rows) {
    out << row.r << ',' << row.s << ',' << row.k_r << ',' << row.k_s << ',' << limit.etas.at(row.r)
        << ',' << limit.etas.at(row.s) << ','
        << limit.overlaps(static_cast<Eigen::Index>(row.r), static_cast<Eigen::Index>(row.s)) << ','
        << limit.gamma << ',' << row.result.value << ',' << row.result.abs_error_estimate << '\n';
  }
}

}  // namespace plancherel
