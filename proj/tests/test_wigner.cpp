#include "plancherel/errors.hpp"
#include "plancherel/rng.hpp"
#include "plancherel/wigner.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace plancherel;

namespace {

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (auto i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("samples are Hermitian and reproducible") {
  const auto a = sample_wigner(12, 3, 7);
  CHECK((a - a.adjoint()).norm() == 0.0);
  CHECK((a - sample_wigner(12, 3, 7)).norm() == 0.0);
  CHECK((a - sample_wigner(12, 3, 8)).norm() > 0.0);
}

TEST_CASE("entry variances") {
  double diag = 0, off = 0, re = 0;
  const int n = 4000;
  for (int r = 0; r < n; ++r) {
    const auto a = sample_wigner(3, 11, static_cast<std::size_t>(r));
    diag += std::norm(a(1, 1));
    off += std::norm(a(0, 2));
    re += a(0, 2).real() * a(0, 2).real();
  }
  CHECK(std::abs(diag / n - 1.0) < 4 * std::sqrt(2.0 / n));
  CHECK(std::abs(off / n - 1.0) < 4 * std::sqrt(1.0 / n));
  CHECK(std::abs(re / n - 0.5) < 4 * std::sqrt(0.5 / n));
}

TEST_CASE("low moments of traces") {
  WignerConfig c;
  c.size = 20;
  c.index_sets = {range(1, 8), range(5, 14), range(15, 20)};
  c.seed = 4;
  c.replicas = 20000;
  c.orders = {1, 2};
  const auto batch = run_wigner(c);
  CHECK(batch.max_relative_imag < 1e-12);

  const auto tr1 = batch.column(0, 0);
  const auto v1 = covariance_estimate(tr1, tr1);
  CHECK(std::abs(v1.value - 8.0) < 4 * v1.std_error);

  const auto tr2 = batch.column(0, 1);
  const auto m2 = mean_estimate(tr2);
  CHECK(std::abs(m2.value - 64.0) < 4 * m2.std_error);

  const auto c12 = covariance_estimate(batch.column(0, 1), batch.column(1, 1));
  CHECK(std::abs(c12.value - 32.0) < 4 * c12.std_error);  // overlap 4: 2 d^2
  const auto c13 = covariance_estimate(batch.column(0, 1), batch.column(2, 1));
  CHECK(std::abs(c13.value) < 4 * c13.std_error);
}

TEST_CASE("exact second-moment covariance") {
  CHECK(exact_low_moment_covariance(range(1, 5), range(1, 5)) == 50.0);
  CHECK(exact_low_moment_covariance(range(1, 5), range(4, 9)) == 8.0);
  CHECK(exact_low_moment_covariance(range(1, 5), range(6, 9)) == 0.0);
  CHECK_THROWS_AS(exact_low_moment_covariance(range(1, 5), range(1, 5), 3), InvalidArgument);
}

TEST_CASE("validation and budget") {
  WignerConfig c;
  c.size = 10;
  c.index_sets = {range(1, 11)};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.index_sets = {{1, 1}};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.index_sets = {range(1, 3)};
  c.validate();
  c.size = 5000;
  c.orders = {2, 7};
  CHECK_THROWS_AS(c.validate(), ResourceLimit);
}

TEST_CASE("parallel and serial batches agree exactly") {
  WignerConfig c;
  c.size = 16;
  c.index_sets = {range(1, 10), range(4, 16)};
  c.seed = 8;
  c.replicas = 40;
  c.orders = {1, 2, 3, 4};
  const auto a = run_wigner(c, 3);
  const auto b = run_wigner_serial(c);
  CHECK(a.traces == b.traces);
}

TEST_CASE("overlap family layout and report") {
  const std::vector<double> fr{0.0, 0.5, 1.0};
  const auto c = overlap_family(40, 10, fr, 6, 3000);
  REQUIRE(c.index_sets.size() == 4);
  CHECK(c.index_sets[1] == range(11, 20));
  CHECK(c.index_sets[2] == range(6, 15));
  CHECK(c.index_sets[3] == range(1, 10));
  CHECK_THROWS_AS(overlap_family(15, 10, fr, 6, 10), InvalidArgument);

  const auto rep = overlap_monotonicity_report(c);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[2].overlap == 10);
  CHECK(rep.rows[2].exact == 200.0);
  CHECK(rep.monotone);
  for (const auto& r : rep.rows) CHECK(std::abs(r.covariance.value - r.exact) < 4 * r.covariance.std_error);

  std::ostringstream out;
  write_wigner_csv(out, c, rep);
  CHECK(out.str().rfind("r,s,k_r,k_s,setsize_r,setsize_s,overlap,value,error_estimate\n0,1,2,2,10,10,0,", 0) == 0);
}

TEST_CASE("covariance depends on the sets only through sizes and overlap") {
  WignerConfig a;
  a.size = 20;
  a.index_sets = {range(1, 8), range(5, 14)};
  a.seed = 21;
  a.replicas = 6000;
  std::vector<std::int64_t> perm = range(1, 20);
  CounterRng rng(stream_key(5, {1}));
  std::shuffle(perm.begin(), perm.end(), rng);
  WignerConfig b = a;
  b.seed = 22;
  for (auto& set : b.index_sets) {
    for (auto& i : set) i = perm[static_cast<std::size_t>(i - 1)];
  }
  const auto ea = covariance_estimate(run_wigner(a).column(0, 0), run_wigner(a).column(1, 0));
  const auto eb = covariance_estimate(run_wigner(b).column(0, 0), run_wigner(b).column(1, 0));
  const double z = (ea.value - eb.value) / std::hypot(ea.std_error, eb.std_error);
  CHECK(std::abs(z) < 2.576);  // two-sample test at the 1% level
}
