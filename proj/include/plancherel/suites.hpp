#pragma once

// Verification suites behind the command-line tool. Each suite appends its
// checks to the manifest and writes its data files into the output directory.

#include "plancherel/config.hpp"
#include "plancherel/gt_core.hpp"
#include "plancherel/manifest.hpp"

#include <filesystem>
#include <ostream>

namespace plancherel {

struct SuiteContext {
  LabConfig config;
  std::filesystem::path out_dir;
  int threads = 0;
};

void run_exact_check(const SuiteContext& ctx, RunManifest& manifest);
void run_sample_suite(const SuiteContext& ctx, RunManifest& manifest);
void run_covariance_suite(const SuiteContext& ctx, RunManifest& manifest);
void run_wigner_suite(const SuiteContext& ctx, RunManifest& manifest);
void run_verify_suite(const SuiteContext& ctx, RunManifest& manifest);

/// Columns name,target,value,tolerance,pass.
void write_checks_csv(std::ostream& out, const RunManifest& manifest);
/// Human-readable summary of a manifest.
std::string render_report(const RunManifest& manifest);

/// Weakly decreasing integer vectors of length n with sum of |parts| <= max_abs.
std::vector<Signature> signatures_up_to(std::size_t n, std::int64_t max_abs);

}  // namespace plancherel
