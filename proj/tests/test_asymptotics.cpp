#include "plancherel/asymptotics.hpp"
#include "plancherel/errors.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

using namespace plancherel;

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^pi x(theta)^(k-1) 2 gamma R sin(theta) sin(n theta) d theta. The integrand is an
// even trigonometric polynomial, so an equispaced rule on the full period is exact.
double mode_integral(int k, int n, double gamma, double R) {
  const int points = 64;
  double s = 0;
  for (int j = 0; j < points; ++j) {
    const double th = 2 * kPi * j / points;
    const double x = gamma * (1 - 2 * R * std::cos(th));
    s += std::pow(x, k - 1) * 2 * gamma * R * std::sin(th) * std::sin(n * th);
  }
  return kPi * s / points;
}

// The kernel expands as (1/pi) sum_n q^n / n sin(n theta) sin(n phi) with
// q = (c / gamma) / (R_r R_s) <= 1; only modes n <= min(k_r, k_s) survive.
double fourier_covariance(int kr, int ks, double gamma, double eta_r, double eta_s, double c) {
  const double R = std::sqrt(eta_r / gamma), S = std::sqrt(eta_s / gamma);
  const double q = (c / gamma) / (R * S);
  double sum = 0;
  for (int n = 1; n <= std::min(kr, ks); ++n) {
    sum += std::pow(q, n) / n * mode_integral(kr, n, gamma, R) * mode_integral(ks, n, gamma, S);
  }
  return kr * ks / (kPi * kPi) * sum;
}

RegularFamilyLimit two_sets(double gamma, double eta_r, double eta_s, double c) {
  RegularFamilyLimit lim;
  lim.gamma = gamma;
  lim.etas = {eta_r, eta_s};
  lim.overlaps.resize(2, 2);
  lim.overlaps << eta_r, c, c, eta_s;
  lim.validate();
  return lim;
}

}  // namespace

TEST_CASE("overlap densities of the regular example family") {
  const auto id = SequenceRule::identity();
  const auto ev = SequenceRule::arithmetic(2, 0);
  const auto od = SequenceRule::arithmetic(2, 1);
  const auto bs = SequenceRule::block_swap();
  CHECK(eval_alpha(id, ev, 1.0, 1.0).value == doctest::Approx(0.5));
  CHECK(eval_alpha(id, ev, 1.0, 0.3).value == doctest::Approx(0.3));
  CHECK(eval_alpha(id, od, 0.8, 1.0).value == doctest::Approx(0.4));
  CHECK(eval_alpha(ev, od, 2.0, 2.0).value == doctest::Approx(0.0));
  CHECK(eval_alpha(id, bs, 1.0, 1.0).value == doctest::Approx(0.0));
  CHECK(eval_alpha(id, bs, 1.5, 0.7).value == doctest::Approx(0.5));
  CHECK(eval_alpha(id, bs, 0.5, 1.5).value == doctest::Approx(0.5));
  CHECK(eval_alpha(id, bs, 1.2, 1.5).value == doctest::Approx(0.7));
  CHECK(eval_alpha(bs, bs, 0.6, 1.7).value == doctest::Approx(0.6));
  CHECK(eval_alpha(id, bs, 2.5, 3.0).value == doctest::Approx(2.5));
  CHECK(eval_alpha(ev, bs, 1.0, 1.0).value == doctest::Approx(0.5));

  const std::vector<SequenceRule> rules{id, ev, od, bs, SequenceRule::arithmetic(3, -1)};
  const std::vector<double> pts{0.25, 0.7, 1.0, 1.3, 2.2, 3.1};
  for (const auto& a : rules) {
    for (const auto& b : rules) {
      for (double x : pts) {
        for (double y : pts) {
          const double v = eval_alpha(a, b, x, y).value;
          CHECK(std::abs(v - alpha_finite_L(a, b, x, y, 1000000)) < 1e-5);
          CHECK(v == doctest::Approx(eval_alpha(b, a, y, x).value));
          CHECK(v <= std::min(x, y) + 1e-12);
          CHECK(v >= 0);
          CHECK(eval_alpha(a, b, x + 0.1, y).value >= v - 1e-12);
        }
        CHECK(eval_alpha(a, a, x, x).value == doctest::Approx(x));
      }
    }
  }
}

TEST_CASE("explicit rules fall back to counting") {
  const auto e = SequenceRule::explicit_list({5, 1, 2, 9, 3, 4, 7, 8, 6, 10});
  const auto a = eval_alpha(e, SequenceRule::identity(), 0.5, 0.5, AlphaMode::closed_form, 10);
  CHECK(a.fell_back);
  CHECK(a.value == doctest::Approx(0.4));
  CHECK_THROWS_AS(eval_alpha(e, SequenceRule::identity(), 0.5, 0.5), InvalidArgument);
}

TEST_CASE("diagonal kernel reduces to the free field kernel") {
  for (int a = 0; a < 50; ++a) {
    const std::complex<double> z = std::polar(0.2 + 0.05 * a, kPi * (a + 0.5) / 50.0);
    for (int b = 0; b < 50; ++b) {
      const std::complex<double> w = std::polar(0.23 + 0.047 * b, kPi * (b + 0.31) / 50.0);
      const double alpha = std::min(std::norm(z), std::norm(w));
      const double g = gff_kernel(z, w);
      CHECK(std::abs(kernel_Cij(alpha, z, w) - g) <= 1e-12 * std::max(1.0, std::abs(g)));
      CHECK(kernel_Cij(0.3, z, w) == doctest::Approx(kernel_Cij(0.3, w, z)).epsilon(1e-13));
    }
  }
}

TEST_CASE("covariance matches the Fourier expansion") {
  struct Case {
    int kr, ks;
    double gamma, eta_r, eta_s, c;
  };
  const std::vector<Case> cases{{1, 1, 1.0, 1.0, 1.0, 1.0}, {2, 2, 2.0, 1.0, 1.0, 1.0},
                                {1, 2, 0.7, 0.5, 1.2, 0.3}, {3, 2, 1.3, 1.0, 0.8, 0.5},
                                {3, 3, 0.5, 0.9, 0.9, 0.9}, {4, 2, 1.0, 2.0, 1.5, 1.0},
                                {2, 3, 1.0, 1.0, 2.0, 0.25}};
  for (const auto& c : cases) {
    const auto lim = two_sets(c.gamma, c.eta_r, c.eta_s, c.c);
    const auto res = theorem2_covariance(c.kr, c.ks, lim, 0, 1, 1e-10);
    const double oracle = fourier_covariance(c.kr, c.ks, c.gamma, c.eta_r, c.eta_s, c.c);
    CHECK(std::abs(res.value - oracle) <= 1e-8 * std::max(1.0, std::abs(oracle)));
    CHECK(res.abs_error_estimate <= 1e-8 * std::max(1.0, std::abs(oracle)));
  }
  CHECK(theorem2_covariance(2, 2, two_sets(2.0, 1.0, 1.0, 1.0), 0, 0).value == doctest::Approx(40.0));
  CHECK(theorem2_covariance(1, 1, two_sets(1.5, 0.8, 1.0, 0.4), 0, 0).value == doctest::Approx(1.2));
  CHECK(theorem2_covariance(1, 1, two_sets(1.5, 0.8, 1.0, 0.4), 0, 1).value == doctest::Approx(0.6));
}

TEST_CASE("covariance symmetry, disjoint sets and homogeneity") {
  const auto lim = two_sets(1.2, 0.9, 1.4, 0.6);
  const auto a = theorem2_covariance(3, 1, lim, 0, 1);
  const auto b = theorem2_covariance(1, 3, lim, 1, 0);
  CHECK(std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(a.value)));

  CHECK(theorem2_covariance(3, 2, two_sets(1.0, 1.0, 1.0, 0.0), 0, 1).value == 0.0);

  // (gamma, eta, c) -> s (gamma, eta, c) keeps the contours and scales x by s.
  const double s = 1.7;
  const auto scaled = two_sets(1.2 * s, 0.9 * s, 1.4 * s, 0.6 * s);
  const auto c = theorem2_covariance(2, 3, lim, 0, 1);
  const auto d = theorem2_covariance(2, 3, scaled, 0, 1);
  CHECK(d.value == doctest::Approx(std::pow(s, 5) * c.value).epsilon(1e-9));
}

TEST_CASE("parallel and serial quadrature agree exactly") {
  const auto lim = two_sets(1.0, 1.0, 0.7, 0.7);
  CHECK(theorem2_covariance(2, 3, lim, 0, 1).value == theorem2_covariance_serial(2, 3, lim, 0, 1).value);
  CHECK(theorem2_covariance(2, 2, lim, 0, 0).value == theorem2_covariance_serial(2, 2, lim, 0, 0).value);
}

TEST_CASE("moment covariance by direct integration and through the power sums") {
  const AlphaFunction nested = [](double y, double y2) { return std::min(y, y2); };
  const AlphaFunction halves = [](double y, double y2) { return 0.5 * std::min(y, 2 * y2); };
  struct Case {
    double y;
    int k;
    double y2;
    int k2;
    double gamma;
    const AlphaFunction* alpha;
  };
  const std::vector<Case> cases{{0.6, 1, 1.0, 2, 1.5, &nested}, {1.0, 0, 1.0, 0, 1.0, &nested},
                                {0.8, 2, 0.8, 2, 0.7, &nested}, {1.0, 1, 1.0, 2, 1.0, &halves}};
  for (const auto& c : cases) {
    const auto m = prop1_moment_covariance(c.y, c.k, c.y2, c.k2, c.gamma, *c.alpha);
    const double scale = std::max(1.0, std::abs(m.via_theorem2.value));
    CHECK(std::abs(m.direct.value - m.via_theorem2.value) <= 1e-8 * scale);
    const double oracle = kPi / ((c.k + 1) * (c.k2 + 1)) *
                          fourier_covariance(c.k + 1, c.k2 + 1, c.gamma, c.y, c.y2, (*c.alpha)(c.y, c.y2));
    CHECK(std::abs(m.via_theorem2.value - oracle) <= 1e-8 * scale);
  }
}

TEST_CASE("limit from sequences and positive definiteness") {
  const std::vector<SequenceRule> rules{SequenceRule::identity(), SequenceRule::arithmetic(2, 0),
                                        SequenceRule::arithmetic(2, 1), SequenceRule::block_swap()};
  const std::vector<double> levels{1.0, 1.0, 1.0, 1.0};
  const auto lim = limit_from_sequences(rules, levels, 1.0);
  CHECK(lim.overlaps(0, 1) == doctest::Approx(0.5));
  CHECK(lim.overlaps(1, 2) == doctest::Approx(0.0));
  CHECK(lim.overlaps(0, 3) == doctest::Approx(0.0));
  CHECK(lim.overlaps(1, 3) == doctest::Approx(0.5));

  std::vector<Probe> probes;
  for (std::size_t r = 0; r < 4; ++r) {
    for (int k = 1; k <= 2; ++k) probes.push_back({r, k});
  }
  const auto rep = pd_check(lim, probes);
  CHECK(rep.min_eigenvalue >= -1e-9 * rep.norm);
  // p_1 is additive over disjoint columns and identity + block_swap = evens + odds at y = 1
  Eigen::VectorXd null = Eigen::VectorXd::Zero(8);
  null(0) = 1;
  null(2) = -1;
  null(4) = -1;
  null(6) = 1;
  CHECK((rep.gram * null).norm() < 1e-8);
  CHECK(rep.max_abs_error < 1e-8);
  CHECK((rep.gram - rep.gram.transpose()).norm() == 0.0);

  const std::vector<Probe> dup{{0, 2}, {0, 2}, {1, 1}};
  const auto sing = pd_check(lim, dup);
  CHECK(std::abs(sing.min_eigenvalue) <= 1e-8 * sing.norm);

  RegularFamilyLimit bad = lim;
  bad.overlaps(0, 1) = 2.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = lim;
  bad.overlaps(0, 1) = 0.3;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("Gaussian joint predictions") {
  Eigen::MatrixXd cov(2, 2);
  cov << 2.0, 0.5, 0.5, 1.0;
  const std::vector<int> four{0, 0, 1, 1};
  CHECK(gaussian_joint_prediction(cov, four) == doctest::Approx(2.0 * 1.0 + 2 * 0.25));
  const std::vector<int> three{0, 1, 1};
  CHECK(gaussian_joint_prediction(cov, three) == 0.0);
  const std::vector<int> quad{0, 0, 0, 0};
  CHECK(gaussian_joint_prediction(cov, quad) == doctest::Approx(12.0));
}

TEST_CASE("covariance table format") {
  const auto lim = two_sets(1.0, 1.0, 0.5, 0.5);
  const std::vector<CovarianceRow> rows{{0, 1, 1, 1, {0.5, 1e-12, 10}}};
  std::ostringstream out;
  write_covariance_table_csv(out, lim, rows);
  CHECK(out.str() == "r,s,k_r,k_s,eta_r,eta_s,c_rs,gamma,value,error_estimate\n0,1,1,1,1,0.5,0.5,1,0.5,9.9999999999999998e-13\n");
}
