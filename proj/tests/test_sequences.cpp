#include "plancherel/errors.hpp"
#include "plancherel/sequences.hpp"

#include "doctest.h"

#include <set>

using namespace plancherel;

TEST_CASE("sequence terms") {
  CHECK(SequenceRule::identity().prefix(4, 10) == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(SequenceRule::arithmetic(2, 0).prefix(3, 10) == std::vector<std::int64_t>{2, 4, 6});
  CHECK(SequenceRule::arithmetic(2, 1).prefix(3, 10) == std::vector<std::int64_t>{3, 5, 7});
  CHECK(SequenceRule::block_swap().prefix(8, 3) == std::vector<std::int64_t>{4, 5, 6, 1, 2, 3, 7, 8});
  CHECK(SequenceRule::explicit_list({5, 2, 9}).prefix(2, 1) == std::vector<std::int64_t>{5, 2});
}

TEST_CASE("prefixes are distinct positive integers") {
  const std::vector<SequenceRule> rules{SequenceRule::identity(), SequenceRule::arithmetic(3, -2),
                                        SequenceRule::arithmetic(2, 1), SequenceRule::block_swap()};
  for (const auto& r : rules) {
    for (std::int64_t L : {1, 7, 50}) {
      const auto p = r.prefix(3 * L + 5, L);
      std::set<std::int64_t> s(p.begin(), p.end());
      CHECK(s.size() == p.size());
      CHECK(*s.begin() >= 1);
    }
  }
}

TEST_CASE("invalid rules are rejected") {
  CHECK_THROWS_AS(SequenceRule::arithmetic(0, 1), InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::arithmetic(2, -2), InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::explicit_list({1, 2, 1}), InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::explicit_list({0, 2}), InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::explicit_list({1, 2}).term(3, 1), InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::identity().term(0, 1), InvalidArgument);
}

TEST_CASE("increasing rules") {
  CHECK(SequenceRule::identity().increasing());
  CHECK(SequenceRule::arithmetic(2, 1).increasing());
  CHECK_FALSE(SequenceRule::block_swap().increasing());
  CHECK(SequenceRule::explicit_list({1, 4, 9}).increasing());
  CHECK_FALSE(SequenceRule::explicit_list({4, 1}).increasing());
}

TEST_CASE("JSON form") {
  for (const auto& r : {SequenceRule::identity(), SequenceRule::arithmetic(2, 1), SequenceRule::block_swap(),
                        SequenceRule::explicit_list({3, 1})}) {
    CHECK(SequenceRule::from_json(r.to_json()) == r);
  }
  CHECK_THROWS_AS(SequenceRule::from_json(nlohmann::json{{"kind", "arithmetic"}, {"q", 2}, {"s", 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(SequenceRule::from_json(nlohmann::json{{"kind", "primes"}}), InvalidArgument);
}

TEST_CASE("scaled levels tolerate decimal rounding") {
  CHECK(scaled_level(0.29, 100) == 29);
  CHECK(scaled_level(1.0, 100) == 100);
  CHECK(scaled_level(0.5, 25) == 12);
}
