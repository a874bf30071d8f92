#pragma once

// Run configuration. The file is JSON; every section is optional, missing
// values take the defaults below, and unknown keys are rejected.
//
//   {
//     "seed": 20240601, "threads": 0, "sigma_gate": 4.0,
//     "exact_check": {"t_values": ["1/4", "1/2"], "max_rows": 3, "max_size": 8,
//                     "path_rows": 4, "path_size": 6, "state_max_k": 3,
//                     "coherency_rows": [1, 2], "tolerance": 1e-10},
//     "sample": {"gamma": 1.0, "L": 100, "replicas": 2000,
//                "sequences": [{"kind": "identity"}], "levels": [1.0], "orders": [1, 2],
//                "write_replicas": true, "identity_checks": 100},
//     "covariance": {"gamma": 1.0, "sequences": [...], "levels": [1.0],
//                    "orders": [1, 2], "tol": 1e-10, "pd_tolerance": 1e-9},
//     "wigner": {"size": 400, "set_size": 200, "fractions": [0, 0.25, 0.5, 0.75, 1],
//                "replicas": 2000},
//     "verify": {"gamma": 1.0, "sequences": [...], "level": 1.0, "orders": [1, 2],
//                "L_values": [25, 50, 100], "replicas": 20000, "quadrature_tol": 1e-10,
//                "relative_floor": 0.1}
//   }

#include "plancherel/numeric.hpp"
#include "plancherel/sequences.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plancherel {

struct ExactCheckConfig {
  std::vector<Rational> t_values;
  std::size_t max_rows = 3;
  std::int64_t max_size = 8;
  std::size_t path_rows = 4;
  std::int64_t path_size = 6;
  int state_max_k = 3;
  std::vector<std::size_t> coherency_rows{1, 2};
  double tolerance = 1e-10;
};

struct SampleConfig {
  double gamma = 1;
  std::int64_t L = 100;
  std::size_t replicas = 2000;
  std::vector<SequenceRule> sequences;
  std::vector<double> levels{1.0};
  std::vector<int> orders{1, 2};
  bool write_replicas = true;
  std::size_t identity_checks = 100;
};

struct CovarianceConfig {
  double gamma = 1;
  std::vector<SequenceRule> sequences;
  std::vector<double> levels{1.0};
  std::vector<int> orders{1, 2};
  double tol = 1e-10;
  double pd_tolerance = 1e-9;
};

struct WignerRunConfig {
  std::int64_t size = 400;
  std::int64_t set_size = 200;
  std::vector<double> fractions{0, 0.25, 0.5, 0.75, 1};
  std::size_t replicas = 2000;
};

struct VerifyConfig {
  double gamma = 1;
  std::vector<SequenceRule> sequences;
  double level = 1;
  std::vector<int> orders{1, 2};
  std::vector<std::int64_t> L_values{25, 50, 100};
  std::size_t replicas = 20000;
  double quadrature_tol = 1e-10;
  double relative_floor = 0.1;
};

struct LabConfig {
  std::uint64_t seed = 20240601;
  int threads = 0;
  double sigma_gate = 4;
  ExactCheckConfig exact_check;
  SampleConfig sample;
  CovarianceConfig covariance;
  WignerRunConfig wigner;
  VerifyConfig verify;
};

/// Defaults with the identity/evens scenario filled in.
LabConfig default_config();

/// Throws InvalidArgument on unknown keys, wrong types or invalid values.
LabConfig config_from_json(const nlohmann::json& j);
LabConfig load_config(const std::string& path);

/// Fully resolved configuration, defaults included.
nlohmann::json to_json(const LabConfig& config);

/// FNV-1a over the canonical dump of to_json(config).
std::uint64_t config_hash(const LabConfig& config);

}  // namespace plancherel
