#include "ucboost/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "ucboost/environments.hpp"

namespace ucboost {

namespace {

// Keeps the optimizer from discarding index results.
volatile double g_sink = 0.0;

constexpr long kBenchChunk = 1000;

double percentile(const std::vector<double>& sorted, double q) {
  const std::size_t i = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
  return sorted[i];
}

// Calls index on pool entries first, first+1, ... (cyclically); appends one
// latency per call to `ns` unless it is null.
void time_calls(const Policy& policy, const std::vector<BenchInput>& pool, std::size_t first,
                long count, std::vector<double>* ns) {
  if (pool.empty()) throw std::invalid_argument("empty bench pool");
  using clock = std::chrono::steady_clock;
  const std::size_t n = pool.size();
  for (long i = 0; i < count; ++i) {
    const BenchInput& in = pool[(first + static_cast<std::size_t>(i)) % n];
    if (!ns) {
      g_sink = policy.index(in.arm, in.t);
      continue;
    }
    const auto start = clock::now();
    const double v = policy.index(in.arm, in.t);
    const auto stop = clock::now();
    g_sink = v;
    ns->push_back(std::chrono::duration<double, std::nano>(stop - start).count());
  }
}

TimingRow summarize(std::string policy, std::vector<double> ns) {
  TimingRow row;
  row.policy = std::move(policy);
  row.calls = static_cast<long>(ns.size());
  if (ns.empty()) return row;
  row.mean_ns = std::accumulate(ns.begin(), ns.end(), 0.0) / static_cast<double>(ns.size());
  std::sort(ns.begin(), ns.end());
  const std::size_t m = ns.size() / 2;
  row.median_ns = ns.size() % 2 ? ns[m] : 0.5 * (ns[m - 1] + ns[m]);
  row.p99_ns = percentile(ns, 0.99);
  return row;
}

}  // namespace

std::vector<BenchInput> record_bench_pool(std::size_t size, std::uint64_t seed, long horizon) {
  const Scenario scenario = preset("bernoulli1");
  const std::size_t k = scenario.arm_count();
  if (size == 0) throw std::invalid_argument("empty bench pool");
  const long rounds = static_cast<long>((size + k - 1) / k);
  const long first = static_cast<long>(k) + 1;
  if (horizon - first + 1 < rounds) throw std::invalid_argument("horizon too short for pool");
  const long spacing = (horizon - first + 1) / rounds;

  PolicyConfig cfg;
  cfg.kind = PolicyKind::ucb1;
  const Policy policy(cfg);
  std::vector<RewardStream> streams;
  for (std::size_t a = 0; a < k; ++a) streams.emplace_back(stream_seed(seed, 0, a));
  PolicyState state(k);

  std::vector<BenchInput> pool;
  pool.reserve(size);
  for (long t = 1; t <= horizon && pool.size() < size; ++t) {
    if (t >= first && (t - first) % spacing == 0) {
      for (std::size_t a = 0; a < k && pool.size() < size; ++a) pool.push_back({state.arms[a], t});
    }
    const std::size_t arm = policy.select_arm(state);
    update(state, arm, sample(scenario.arms[arm], streams[arm]));
  }
  return pool;
}

TimingRow bench_policy(const Policy& policy, const std::vector<BenchInput>& pool, long samples) {
  time_calls(policy, pool, 0, kBenchWarmup, nullptr);
  std::vector<double> ns;
  ns.reserve(static_cast<std::size_t>(samples));
  time_calls(policy, pool, 0, samples, &ns);
  return summarize(policy.name(), std::move(ns));
}

std::vector<TimingRow> bench(const std::vector<PolicyConfig>& configs, long samples,
                             std::uint64_t seed) {
  if (samples < 10000) throw std::invalid_argument("bench needs at least 10000 samples");
  const std::vector<BenchInput> pool = record_bench_pool(8190, seed);
  std::vector<Policy> policies(configs.begin(), configs.end());
  std::vector<std::vector<double>> ns(policies.size());
  for (std::size_t i = 0; i < policies.size(); ++i) {
    time_calls(policies[i], pool, 0, kBenchWarmup, nullptr);
    ns[i].reserve(static_cast<std::size_t>(samples));
  }
  // Policies take turns in chunks so slow drift of the machine hits all alike.
  for (long done = 0; done < samples; done += kBenchChunk) {
    const long n = std::min(kBenchChunk, samples - done);
    for (std::size_t i = 0; i < policies.size(); ++i) {
      time_calls(policies[i], pool, static_cast<std::size_t>(done), n, &ns[i]);
    }
  }
  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    rows.push_back(summarize(policies[i].name(), std::move(ns[i])));
  }
  return rows;
}

}  // namespace ucboost
