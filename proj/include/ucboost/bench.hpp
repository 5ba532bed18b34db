#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucboost/policies.hpp"

namespace ucboost {

/// Arm statistics and round as seen by one index call.
struct BenchInput {
  ArmStatistics arm;
  long t = 0;
};

/// Inputs sampled evenly from a ucb1 trajectory on bernoulli1: every arm's
/// statistics at evenly spaced rounds after initialization.
std::vector<BenchInput> record_bench_pool(std::size_t size = 8190, std::uint64_t seed = 1,
                                          long horizon = 10000);

struct TimingRow {
  std::string policy;
  long calls = 0;
  double median_ns = 0.0;
  double mean_ns = 0.0;
  double p99_ns = 0.0;
};

inline constexpr long kBenchWarmup = 1000;

/// Times `samples` index calls cycling through the pool after kBenchWarmup
/// untimed calls. Each call is bracketed by its own steady_clock reads.
TimingRow bench_policy(const Policy& policy, const std::vector<BenchInput>& pool, long samples);

/// Same pool and call sequence for every policy; policies alternate in chunks of
/// 1000 timed calls. Throws std::invalid_argument for samples < 10^4.
std::vector<TimingRow> bench(const std::vector<PolicyConfig>& policies, long samples,
                             std::uint64_t seed = 1);

}  // namespace ucboost
