#include "plancherel/manifest.hpp"

#include "plancherel/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace plancherel {

bool RunManifest::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : m.checks) {
    checks.push_back({{"name", c.name},
                      {"target", c.target},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  return {{"subcommand", m.subcommand},
          {"config_hash", hex64(m.config_hash)},
          {"seed", m.seed},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp},
          {"parameters", m.parameters},
          {"checks", checks},
          {"artifacts", m.artifacts},
          {"all_pass", m.all_pass()}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    m.parameters = j.at("parameters");
    for (const auto& c : j.at("checks")) {
      m.checks.push_back({c.at("name").get<std::string>(), c.at("target").get<std::string>(),
                          c.at("value").is_null() ? 0.0 : c.at("value").get<double>(),
                          c.at("tolerance").get<double>(), c.at("pass").get<bool>()});
    }
    m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace plancherel
