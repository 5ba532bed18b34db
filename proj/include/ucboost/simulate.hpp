#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucboost/environments.hpp"
#include "ucboost/policies.hpp"

namespace ucboost {

struct RunConfig {
  Scenario scenario;
  std::vector<std::string> policies;  // tokens for parse_policy
  long horizon = 10000;
  long runs = 200;
  std::uint64_t seed = 1;
  double c = 0.0;
  double epsilon = 0.01;
  double kl_tolerance = 1e-5;
  long stride = 100;
  unsigned threads = 1;  // 0 picks the hardware concurrency

  /// Throws std::invalid_argument: T < K, R < 1, stride < 1, bad policies.
  void validate() const;
  /// Parses the policy tokens with c, epsilon and kl_tolerance as defaults.
  std::vector<PolicyConfig> resolve_policies() const;
};

struct TracePoint {
  long t = 0;
  double mean_regret = 0.0;
  double std_error = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Mean cumulative pseudo-regret across runs for one policy.
struct RegretTrace {
  std::string policy;
  std::vector<TracePoint> points;

  friend bool operator==(const RegretTrace&, const RegretTrace&) = default;
};

/// stride, 2 stride, ... up to T, plus T itself.
std::vector<long> recorded_steps(long horizon, long stride);

/// One replication of one policy.
struct Replication {
  std::vector<double> regret;  // cumulative pseudo-regret at each recorded step
  std::vector<long> pulls;     // N_a(T)
};

/// Run `run` (1-based) of a policy. Arm a's n-th reward is the n-th draw of the
/// stream seeded by (seed, run, a), so all policies see common random numbers.
Replication run_replication(const Scenario& scenario, const Policy& policy, long horizon,
                            std::uint64_t seed, long run, const std::vector<long>& steps);

/// One trace per policy, in the order given. Output does not depend on threads.
std::vector<RegretTrace> simulate(const RunConfig& cfg);

}  // namespace ucboost
