#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "lda/attack.hpp"
#include "lda/protocol.hpp"

namespace lda {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of trial i under master seed s: mix64(s ^ i).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

struct TrialResult {
  int index = 0;
  std::uint64_t seed = 0;
  bool match = false;
  std::size_t dims[3] = {0, 0, 0};
  OpCounter ops;
  std::chrono::nanoseconds wall_time{0};
};

struct DemoSummary {
  std::vector<TrialResult> trials;
  int matches() const;
};

/// Simulate, attack and verify `trials` runs derived from params.seed.
DemoSummary run_demo(const ProtocolParams &params, int trials);

struct BenchRecord {
  int n = 0;
  std::size_t dim = 0;
  int protocol_id = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t stage_dims[3] = {0, 0, 0};
  std::uint64_t mul_count = 0;        // whole attack
  std::uint64_t build_mul_count = 0;  // the three basis builds
  double bound_value = 0;             // sum of the three per-build bounds
  double ratio = 0;                   // build_mul_count / bound_value
  std::chrono::nanoseconds wall_time{0};
};

struct BenchTable {
  std::vector<BenchRecord> records;
  // Least-squares slope of log(median mul_count) against log(dim), per
  // protocol (index 0 and 1).
  double slope[2] = {0, 0};
  double median_ratio = 0;
};

BenchTable run_bench(const ProtocolParams &base, const std::vector<int> &strand_counts, int trials);

/// Least-squares slope of log(y) against log(x). Needs two distinct x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

std::string bench_json(const BenchTable &table, bool include_timing);
std::string bench_pretty(const BenchTable &table, bool include_timing);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The module invariant suites: field axioms, braid relations, subgroup
/// commutation, span fixpoint, key agreement, attack soundness.
std::vector<SuiteResult> run_selftest();

}  // namespace lda
