#include "plancherel/config.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/manifest.hpp"
#include "plancherel/suites.hpp"

#include "doctest.h"

#include <sstream>

using namespace plancherel;
using nlohmann::json;

TEST_CASE("config defaults and round trip") {
  const auto d = default_config();
  CHECK(d.sample.sequences.size() == 2);
  CHECK(d.covariance.sequences.size() == 4);
  const auto j = to_json(d);
  const auto back = config_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(config_hash(back) == config_hash(d));

  const auto partial = config_from_json(json::parse(R"({"seed": 7, "sample": {"L": 30}})"));
  CHECK(partial.seed == 7);
  CHECK(partial.sample.L == 30);
  CHECK(partial.sample.replicas == d.sample.replicas);
  CHECK(config_hash(partial) != config_hash(d));
}

TEST_CASE("config rejects unknown keys and bad values") {
  for (const char* text : {R"({"sede": 1})", R"({"sample": {"gama": 1.0}})",
                           R"({"sample": {"sequences": [{"kind": "identity", "q": 2}]}})",
                           R"({"sample": {"L": "ten"}})", R"({"sample": {"gamma": -1}})",
                           R"({"wigner": {"size": 10, "set_size": 8}})",
                           R"({"exact_check": {"t_values": ["1/x"]}})", R"([1, 2])"}) {
    CAPTURE(std::string(text));
    CHECK_THROWS_AS(config_from_json(json::parse(text)), InvalidArgument);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InvalidArgument);
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.subcommand = "sample";
  m.config_hash = 0xdeadbeef12345678ULL;
  m.seed = 99;
  m.tool_version = "0.1.0";
  m.timestamp = utc_timestamp();
  m.parameters = {{"L", 100}};
  m.add({"a", "0", 0.5, 1.0, true});
  m.artifacts = {"replicas.ndjson"};
  CHECK(m.all_pass());
  const auto back = manifest_from_json(to_json(m));
  CHECK(back.config_hash == m.config_hash);
  CHECK(back.checks.size() == 1);
  CHECK(back.checks[0].name == "a");
  CHECK(back.artifacts == m.artifacts);
  CHECK(to_json(back) == to_json(m));
  CHECK(to_json(m).at("all_pass").get<bool>());
  m.add({"b", "1", 2.0, 0.1, false});
  CHECK_FALSE(m.all_pass());
  CHECK(hex64(255) == "0x00000000000000ff");
  CHECK(m.timestamp.size() == 20);
  CHECK(m.timestamp.back() == 'Z');
}

TEST_CASE("checks csv and report") {
  RunManifest m;
  m.subcommand = "exact-check";
  m.add({"quoted \"name\"", "1/4", 0.25, 0.0, true});
  std::ostringstream out;
  write_checks_csv(out, m);
  CHECK(out.str() == "name,target,value,tolerance,pass\n\"quoted \"\"name\"\"\",\"1/4\",0.25,0,true\n");
  const auto text = render_report(m);
  CHECK(text.find("1 / 1 passed") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);
}

TEST_CASE("signature enumeration for the branching checks") {
  const auto s = signatures_up_to(2, 2);
  // (0,0) (1,0) (0,-1) (2,0) (1,-1) (0,-2) (1,1) (-1,-1)
  CHECK(s.size() == 8);
  for (const auto& sig : s) CHECK(sig.length() == 2);
}
