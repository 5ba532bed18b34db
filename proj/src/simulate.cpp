#include "ucboost/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ucboost {

void RunConfig::validate() const {
  scenario.validate();
  if (policies.empty()) throw std::invalid_argument("no policies given");
  if (horizon < static_cast<long>(scenario.arm_count())) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                " is shorter than the " +
                                std::to_string(scenario.arm_count()) + " initialization pulls");
  }
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  resolve_policies();
}

std::vector<PolicyConfig> RunConfig::resolve_policies() const {
  PolicyConfig defaults;
  defaults.c = c;
  defaults.epsilon = epsilon;
  defaults.kl_tolerance = kl_tolerance;
  std::vector<PolicyConfig> out;
  for (const auto& token : policies) out.push_back(parse_policy(token, defaults));
  return out;
}

std::vector<long> recorded_steps(long horizon, long stride) {
  std::vector<long> steps;
  for (long t = stride; t <= horizon; t += stride) steps.push_back(t);
  if (steps.empty() || steps.back() != horizon) steps.push_back(horizon);
  return steps;
}

Replication run_replication(const Scenario& scenario, const Policy& policy, long horizon,
                            std::uint64_t seed, long run, const std::vector<long>& steps) {
  const std::size_t k = scenario.arm_count();
  const std::vector<double> gaps = scenario.gaps();
  std::vector<RewardStream> streams;
  streams.reserve(k);
  for (std::size_t a = 0; a < k; ++a) {
    streams.emplace_back(stream_seed(seed, static_cast<std::uint64_t>(run), a));
  }

  const bool track = policy.config().kind == PolicyKind::klucb_general;
  PolicyState state(k, track);
  Replication rep;
  rep.regret.reserve(steps.size());
  double regret = 0.0;
  std::size_t next = 0;
  for (long t = 1; t <= horizon; ++t) {
    const std::size_t arm = policy.select_arm(state);
    update(state, arm, sample(scenario.arms[arm], streams[arm]));
    regret += gaps[arm];
    if (next < steps.size() && steps[next] == t) {
      rep.regret.push_back(regret);
      ++next;
    }
  }
  rep.pulls.reserve(k);
  for (const auto& a : state.arms) rep.pulls.push_back(a.pulls);
  return rep;
}

std::vector<RegretTrace> simulate(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Policy> policies;
  for (auto& pc : cfg.resolve_policies()) policies.emplace_back(std::move(pc));
  const std::vector<long> steps = recorded_steps(cfg.horizon, cfg.stride);

  const std::size_t runs = static_cast<std::size_t>(cfg.runs);
  const std::size_t jobs = policies.size() * runs;
  std::vector<std::vector<double>> results(jobs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        const std::size_t p = j / runs;
        const long run = static_cast<long>(j % runs) + 1;
        results[j] =
            run_replication(cfg.scenario, policies[p], cfg.horizon, cfg.seed, run, steps).regret;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RegretTrace> traces;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    RegretTrace trace;
    trace.policy = policies[p].name();
    for (std::size_t s = 0; s < steps.size(); ++s) {
      double sum = 0.0;
      for (std::size_t r = 0; r < runs; ++r) sum += results[p * runs + r][s];
      const double mean = sum / static_cast<double>(runs);
      double ss = 0.0;
      for (std::size_t r = 0; r < runs; ++r) {
        const double d = results[p * runs + r][s] - mean;
        ss += d * d;
      }
      const double se =
          runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1) / static_cast<double>(runs))
                   : 0.0;
      trace.points.push_back({steps[s], mean, se});
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace ucboost
