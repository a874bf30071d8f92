#include "plancherel/errors.hpp"
#include "plancherel/plancherel_exact.hpp"

#include "doctest.h"

#include <cmath>

using namespace plancherel;

namespace {

double d(const HighFloat& x) { return x.convert_to<double>(); }

SignatureFunction power_sum(int k) {
  return [k](const Signature& lam) { return shifted_power_sum(k, lam); };
}

}  // namespace

TEST_CASE("RSK identity: sum of dim * Dim_N over |lam| = n is N^n") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::int64_t size = 0; size <= 8; ++size) {
      BigInt sum = 0;
      for (const auto& lam : partitions_of(size, n)) sum += sym_dim(lam) * weyl_dim(lam);
      BigInt power = 1;
      for (std::int64_t i = 0; i < size; ++i) power *= static_cast<long>(n);
      CHECK(sum == power);
    }
  }
}

TEST_CASE("rational parts sum to one at each size") {
  const PlancherelParams params{frac(1, 4), 3, 1e-12};
  for (std::int64_t size = 0; size <= 6; ++size) {
    Rational total = 0;
    for (const auto& lam : partitions_of(size, 3)) total += weight(lam, params).rational_part;
    CHECK(total == 1);
  }
}

TEST_CASE("one row reduces to the Poisson law") {
  const PlancherelParams params{frac(1, 2), 1, 1e-12};
  for (std::int64_t n = 0; n <= 6; ++n) {
    const double expected = std::exp(-0.5) * std::pow(0.5, n) / std::tgamma(n + 1.0);
    CHECK(d(weight(Signature({n}), params).value()) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("weights vanish off the nonnegative cone and reject long signatures") {
  const PlancherelParams params{frac(1, 4), 2, 1e-12};
  CHECK(d(weight(Signature({1, -1}), params).value()) == 0.0);
  CHECK_THROWS_AS(weight(Signature({1, 0, 0}), params), InvalidArgument);
  CHECK(weight(Signature({1}), params).rational_part == weight(Signature({1, 0}), params).rational_part);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PlancherelParams({Rational(-1), 1, 1e-12}).validate(), InvalidArgument);
  CHECK_THROWS_AS(PlancherelParams({Rational(1), 0, 1e-12}).validate(), InvalidArgument);
  CHECK_THROWS_AS(enumerate_support({Rational(20), 3, 1e-12}), ResourceLimit);
}

TEST_CASE("normalization, mean and variance of p_1") {
  for (const Rational& t : {frac(1, 4), frac(1, 2)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const PlancherelParams params{t, n, 1e-12};
      const auto table = enumerate_support(params);
      CHECK(std::abs(d(table.covered_mass) - 1) <= 1e-12 + table.tail_bound());
      const double tn = to_double(t) * static_cast<double>(n);
      const auto mean = exact_moment(table, power_sum(1), power_sum_growth(1, n));
      CHECK(std::abs(d(mean.value) - tn) <= d(mean.tail_bound) + 1e-15);
      const auto second = exact_moment(
          table, [](const Signature& lam) { return Rational(shifted_power_sum(1, lam) * shifted_power_sum(1, lam)); },
          GrowthBound{1, 2});
      CHECK(std::abs(d(second.value) - tn - tn * tn) <= d(second.tail_bound) + 1e-15);
    }
  }
}

TEST_CASE("E p_2 = N t^2") {
  const Rational t = frac(1, 4);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto m = exact_moment(power_sum(2), {t, n, 1e-14}, power_sum_growth(2, n));
    CHECK(d(m.value) == doctest::Approx(static_cast<double>(n) / 16).epsilon(1e-12));
  }
}

TEST_CASE("exact_moment requires a growth bound") {
  CHECK_THROWS_AS(exact_moment(power_sum(1), {frac(1, 4), 1, 1e-12}, std::nullopt), InvalidArgument);
}

TEST_CASE("shifted power sums") {
  CHECK(shifted_power_sum(1, Signature({2, 1})) == 3);
  // ((3/2)^3 - (-1/2)^3) + ((-1/2)^3 - (-3/2)^3) = 28/8 + 26/8
  CHECK(shifted_power_sum(3, Signature({2, 1})) == frac(27, 4));
  CHECK(shifted_power_sum(2, Signature({0, 0})) == 0);
  CHECK_THROWS_AS(shifted_power_sum(0, Signature({1})), InvalidArgument);
}

TEST_CASE("coherency at t = 1/4") {
  for (std::size_t n : {1u, 2u}) {
    const Rational t = frac(1, 4);
    const auto lower = enumerate_support({t, n, 1e-12});
    const auto upper = enumerate_support({t, n + 1, 1e-12});
    for (const auto& e : lower.entries) {
      const auto r = coherency_check(lower, upper, e.signature);
      CHECK(std::abs(d(r.lhs - r.rhs)) <= 1e-10);
    }
  }
  const auto root = coherency_check({frac(1, 4), 0, 1e-12}, Signature());
  CHECK(std::abs(d(root.lhs - root.rhs)) <= 1e-10);
}

TEST_CASE("path counts down the levels reproduce Dim") {
  const Signature nu({3, 1, 0});
  for (std::size_t k = 0; k <= 3; ++k) {
    BigInt total = 0;
    for (const auto& [mu, paths] : paths_to_level(nu, k)) total += weyl_dim(mu) * paths;
    CHECK(total == weyl_dim(nu));
  }
}

TEST_CASE("nested joint moment of p_1 matches the Poisson coupling") {
  // |lam^(1)| = X, |lam^(2)| = X + Y with X, Y independent Poisson(t): E[X(X+Y)] = t + 2t^2
  const Rational t = frac(1, 4);
  const auto m = nested_joint_moment(1, power_sum(1), power_sum(1), {t, 2, 1e-14}, GrowthBound{1, 1},
                                     GrowthBound{1, 1});
  CHECK(d(m.value) == doctest::Approx(0.25 + 2 * 0.0625).epsilon(1e-12));
}

TEST_CASE("Poisson tail bound") {
  CHECK(poisson_tail_bound(2.0, 20) < 1e-10);
  CHECK(poisson_tail_bound(2.0, 10) > poisson_tail_bound(2.0, 20));
  const auto n = poisson_truncation(1.0, 1e-12);
  CHECK(poisson_tail_bound(1.0, n) <= 1e-12);
}

TEST_CASE("measure tables survive JSON serialization") {
  const auto table = enumerate_support({frac(1, 4), 2, 1e-10});
  const auto back = measure_table_from_json(to_json(table));
  REQUIRE(back.entries.size() == table.entries.size());
  CHECK(back.params.t == table.params.t);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    CHECK(back.entries[i].signature == table.entries[i].signature);
    CHECK(back.entries[i].weight.rational_part == table.entries[i].weight.rational_part);
  }
  CHECK(back.find(Signature({1, 0})) != nullptr);
}
