#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plancherel {

struct CheckOutcome {
  std::string name;
  std::string target;  ///< what the value is compared against, in words or digits
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

struct RunManifest {
  std::string subcommand;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  ///< UTC, ISO 8601
  nlohmann::json parameters;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> artifacts;  ///< relative to the output directory

  bool all_pass() const;
  void add(CheckOutcome outcome) { checks.push_back(std::move(outcome)); }
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

std::string utc_timestamp();
std::string hex64(std::uint64_t v);

}  // namespace plancherel
