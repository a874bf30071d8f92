// plancherel-lab: seeded verification runs with JSON manifests.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or resource error.

#include "plancherel/config.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/manifest.hpp"
#include "plancherel/suites.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace plancherel;

struct Common {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string out_dir = "plancherel-out";
  std::string manifest_path;
};

int resolve_threads(const Common& c, const LabConfig& cfg) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("PLANCHEREL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
    throw InvalidArgument("PLANCHEREL_THREADS must be a positive integer");
  }
  return cfg.threads;
}

int run_suite(const std::string& name, const Common& common) {
  LabConfig cfg = common.config_path.empty() ? default_config() : load_config(common.config_path);
  if (common.seed_given) cfg.seed = common.seed;
  SuiteContext ctx{cfg, common.out_dir, resolve_threads(common, cfg)};
  if (ctx.threads > 0) omp_set_num_threads(ctx.threads);

  RunManifest m;
  m.subcommand = name;
  m.config_hash = config_hash(cfg);
  m.seed = cfg.seed;
  m.tool_version = PLANCHEREL_VERSION;
  m.timestamp = utc_timestamp();
  m.parameters = to_json(cfg);
  m.parameters["threads_used"] = ctx.threads > 0 ? ctx.threads : omp_get_max_threads();

  if (name == "exact-check") run_exact_check(ctx, m);
  else if (name == "sample") run_sample_suite(ctx, m);
  else if (name == "covariance") run_covariance_suite(ctx, m);
  else if (name == "wigner") run_wigner_suite(ctx, m);
  else if (name == "verify") run_verify_suite(ctx, m);

  std::filesystem::create_directories(ctx.out_dir);
  {
    std::ofstream out(ctx.out_dir / "checks.csv");
    write_checks_csv(out, m);
  }
  m.artifacts.push_back("checks.csv");
  {
    std::ofstream out(ctx.out_dir / "manifest.json");
    out << to_json(m).dump(2) << '\n';
    if (!out) throw ResourceLimit("cannot write manifest");
  }
  std::cout << render_report(m);
  return m.all_pass() ? 0 : 1;
}

int run_report(const Common& common) {
  const std::string path =
      common.manifest_path.empty() ? (std::filesystem::path(common.out_dir) / "manifest.json").string()
                                   : common.manifest_path;
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("manifest parse error: ") + e.what());
  }
  const auto m = manifest_from_json(j);
  std::cout << render_report(m);
  std::filesystem::create_directories(common.out_dir);
  std::ofstream out(std::filesystem::path(common.out_dir) / "summary.csv");
  write_checks_csv(out, m);
  return m.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact, Monte Carlo and quadrature checks for Plancherel characters of U(infinity)"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON configuration file");
    sub->add_option("--seed", common.seed, "64-bit seed (overrides the config)")
        ->each([&](const std::string&) { common.seed_given = true; });
    sub->add_option("--threads", common.threads, "OpenMP threads (overrides PLANCHEREL_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out_dir, "output directory");
  };
  const std::vector<std::pair<std::string, std::string>> suites{
      {"exact-check", "exact combinatorics, measure and state oracles"},
      {"sample", "RSK sampler batch with replica and covariance output"},
      {"covariance", "quadrature covariance table and positive-definiteness"},
      {"wigner", "Wigner submatrix trace covariances"},
      {"verify", "sampler vs quadrature over a ladder of L"},
  };
  for (const auto& [name, help] : suites) add_common(app.add_subcommand(name, help));
  auto* report = app.add_subcommand("report", "render a manifest as text and summary CSV");
  add_common(report);
  report->add_option("--manifest", common.manifest_path, "manifest path (default OUT/manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "report") return run_report(common);
    return run_suite(name, common);
  } catch (const InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationFailed& e) {
    std::cerr << "computation failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
