#include "plancherel/config.hpp"

#include "plancherel/errors.hpp"

#include <fstream>
#include <set>

namespace plancherel {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw InvalidArgument("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

std::vector<SequenceRule> read_rules(const json& j) {
  if (!j.is_array()) throw InvalidArgument("sequences must be an array");
  std::vector<SequenceRule> out;
  for (const auto& r : j) out.push_back(SequenceRule::from_json(r));
  if (out.empty()) throw InvalidArgument("sequences must be nonempty");
  return out;
}

json rules_json(const std::vector<SequenceRule>& rules) {
  json a = json::array();
  for (const auto& r : rules) a.push_back(r.to_json());
  return a;
}

void positive(double v, const char* name) {
  if (!(v > 0)) throw InvalidArgument(std::string(name) + " must be positive");
}

std::vector<SequenceRule> identity_and_evens() {
  return {SequenceRule::identity(), SequenceRule::arithmetic(2, 0)};
}

}  // namespace

LabConfig default_config() {
  LabConfig c;
  c.exact_check.t_values = {frac(1, 4), frac(1, 2)};
  c.sample.sequences = identity_and_evens();
  c.covariance.sequences = {SequenceRule::identity(), SequenceRule::arithmetic(2, 0),
                            SequenceRule::arithmetic(2, 1), SequenceRule::block_swap()};
  c.verify.sequences = identity_and_evens();
  return c;
}

LabConfig config_from_json(const json& j) {
  LabConfig c = default_config();
  try {
    require_keys(j, "config", {"seed", "threads", "sigma_gate", "exact_check", "sample", "covariance",
                               "wigner", "verify"});
    read(j, "seed", c.seed);
    read(j, "threads", c.threads);
    read(j, "sigma_gate", c.sigma_gate);
    positive(c.sigma_gate, "sigma_gate");
    if (c.threads < 0) throw InvalidArgument("threads must be nonnegative");

    if (j.contains("exact_check")) {
      const auto& e = j.at("exact_check");
      require_keys(e, "exact_check", {"t_values", "max_rows", "max_size", "path_rows", "path_size",
                                      "state_max_k", "coherency_rows", "tolerance"});
      auto& x = c.exact_check;
      if (e.contains("t_values")) {
        x.t_values.clear();
        for (const auto& t : e.at("t_values")) x.t_values.push_back(parse_rational(t.get<std::string>()));
      }
      read(e, "max_rows", x.max_rows);
      read(e, "max_size", x.max_size);
      read(e, "path_rows", x.path_rows);
      read(e, "path_size", x.path_size);
      read(e, "state_max_k", x.state_max_k);
      read(e, "coherency_rows", x.coherency_rows);
      read(e, "tolerance", x.tolerance);
      for (const auto& t : x.t_values) {
        if (t <= 0) throw InvalidArgument("t_values must be positive");
      }
      if (x.state_max_k < 1 || x.state_max_k > 4) throw InvalidArgument("state_max_k must lie in 1..4");
      positive(x.tolerance, "exact_check.tolerance");
    }

    if (j.contains("sample")) {
      const auto& s = j.at("sample");
      require_keys(s, "sample", {"gamma", "L", "replicas", "sequences", "levels", "orders",
                                 "write_replicas", "identity_checks"});
      auto& x = c.sample;
      read(s, "gamma", x.gamma);
      read(s, "L", x.L);
      read(s, "replicas", x.replicas);
      if (s.contains("sequences")) x.sequences = read_rules(s.at("sequences"));
      read(s, "levels", x.levels);
      read(s, "orders", x.orders);
      read(s, "write_replicas", x.write_replicas);
      read(s, "identity_checks", x.identity_checks);
      positive(x.gamma, "sample.gamma");
    }

    if (j.contains("covariance")) {
      const auto& s = j.at("covariance");
      require_keys(s, "covariance", {"gamma", "sequences", "levels", "orders", "tol", "pd_tolerance"});
      auto& x = c.covariance;
      read(s, "gamma", x.gamma);
      if (s.contains("sequences")) x.sequences = read_rules(s.at("sequences"));
      read(s, "levels", x.levels);
      read(s, "orders", x.orders);
      read(s, "tol", x.tol);
      read(s, "pd_tolerance", x.pd_tolerance);
      positive(x.gamma, "covariance.gamma");
      positive(x.tol, "covariance.tol");
      if (x.levels.empty() || x.orders.empty()) throw InvalidArgument("covariance needs levels and orders");
    }

    if (j.contains("wigner")) {
      const auto& s = j.at("wigner");
      require_keys(s, "wigner", {"size", "set_size", "fractions", "replicas"});
      auto& x = c.wigner;
      read(s, "size", x.size);
      read(s, "set_size", x.set_size);
      read(s, "fractions", x.fractions);
      read(s, "replicas", x.replicas);
      if (x.set_size < 1 || 2 * x.set_size > x.size) {
        throw InvalidArgument("wigner needs 1 <= set_size and 2 * set_size <= size");
      }
      for (double f : x.fractions) {
        if (!(f >= 0 && f <= 1)) throw InvalidArgument("wigner fractions must lie in [0, 1]");
      }
    }

    if (j.contains("verify")) {
      const auto& s = j.at("verify");
      require_keys(s, "verify", {"gamma", "sequences", "level", "orders", "L_values", "replicas",
                                 "quadrature_tol", "relative_floor"});
      auto& x = c.verify;
      read(s, "gamma", x.gamma);
      if (s.contains("sequences")) x.sequences = read_rules(s.at("sequences"));
      read(s, "level", x.level);
      read(s, "orders", x.orders);
      read(s, "L_values", x.L_values);
      read(s, "replicas", x.replicas);
      read(s, "quadrature_tol", x.quadrature_tol);
      read(s, "relative_floor", x.relative_floor);
      positive(x.gamma, "verify.gamma");
      positive(x.level, "verify.level");
      if (x.L_values.empty()) throw InvalidArgument("verify.L_values must be nonempty");
      for (auto L : x.L_values) {
        if (L < 1) throw InvalidArgument("verify.L_values must be positive");
      }
      if (x.replicas < 100) throw InvalidArgument("verify.replicas must be at least 100");
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config type error: ") + e.what());
  }
  return c;
}

LabConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config parse error in '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

json to_json(const LabConfig& c) {
  json t = json::array();
  for (const auto& v : c.exact_check.t_values) t.push_back(rational_to_string(v));
  return {
      {"seed", c.seed},
      {"threads", c.threads},
      {"sigma_gate", c.sigma_gate},
      {"exact_check",
       {{"t_values", t},
        {"max_rows", c.exact_check.max_rows},
        {"max_size", c.exact_check.max_size},
        {"path_rows", c.exact_check.path_rows},
        {"path_size", c.exact_check.path_size},
        {"state_max_k", c.exact_check.state_max_k},
        {"coherency_rows", c.exact_check.coherency_rows},
        {"tolerance", c.exact_check.tolerance}}},
      {"sample",
       {{"gamma", c.sample.gamma},
        {"L", c.sample.L},
        {"replicas", c.sample.replicas},
        {"sequences", rules_json(c.sample.sequences)},
        {"levels", c.sample.levels},
        {"orders", c.sample.orders},
        {"write_replicas", c.sample.write_replicas},
        {"identity_checks", c.sample.identity_checks}}},
      {"covariance",
       {{"gamma", c.covariance.gamma},
        {"sequences", rules_json(c.covariance.sequences)},
        {"levels", c.covariance.levels},
        {"orders", c.covariance.orders},
        {"tol", c.covariance.tol},
        {"pd_tolerance", c.covariance.pd_tolerance}}},
      {"wigner",
       {{"size", c.wigner.size},
        {"set_size", c.wigner.set_size},
        {"fractions", c.wigner.fractions},
        {"replicas", c.wigner.replicas}}},
      {"verify",
       {{"gamma", c.verify.gamma},
        {"sequences", rules_json(c.verify.sequences)},
        {"level", c.verify.level},
        {"orders", c.verify.orders},
        {"L_values", c.verify.L_values},
        {"replicas", c.verify.replicas},
        {"quadrature_tol", c.verify.quadrature_tol},
        {"relative_floor", c.verify.relative_floor}}},
  };
}

std::uint64_t config_hash(const LabConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace plancherel
