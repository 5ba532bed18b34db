#include "ucboost/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucboost/bench.hpp"
#include "ucboost/csv.hpp"
#include "ucboost/environments.hpp"
#include "ucboost/policies.hpp"
#include "ucboost/simulate.hpp"

namespace ucboost {

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string item = list.substr(start, comma - start);
    if (item.empty()) throw std::invalid_argument("empty entry in policy list '" + list + "'");
    items.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

Scenario resolve_scenario(const std::string& name) {
  const std::string prefix = "file:";
  if (name.rfind(prefix, 0) == 0) return load_scenario(name.substr(prefix.size()));
  return preset(name);
}

struct SimulateArgs {
  std::string scenario;
  std::string policies;
  long horizon = 10000;
  long runs = 200;
  std::uint64_t seed = 1;
  double c = 0.0;
  double epsilon = 0.01;
  double kl_tol = 1e-5;
  long stride = 100;
  unsigned threads = 1;
  std::string out;
};

struct BenchArgs {
  std::string policies;
  long samples = 100000;
  std::uint64_t seed = 1;
  double c = 0.0;
  double epsilon = 0.01;
  double kl_tol = 1e-5;
  std::string out;
};

struct IndexArgs {
  std::string policy;
  double mean = 0.0;
  long pulls = 1;
  long t = 2;
  double c = 0.0;
  double epsilon = 0.01;
  double kl_tol = 1e-5;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  RunConfig cfg;
  cfg.scenario = resolve_scenario(a.scenario);
  cfg.policies = split_list(a.policies);
  cfg.horizon = a.horizon;
  cfg.runs = a.runs;
  cfg.seed = a.seed;
  cfg.c = a.c;
  cfg.epsilon = a.epsilon;
  cfg.kl_tolerance = a.kl_tol;
  cfg.stride = a.stride;
  cfg.threads = a.threads;
  cfg.validate();
  const auto traces = simulate(cfg);
  write_regret_csv(a.out, traces);
  for (const auto& trace : traces) {
    const TracePoint& last = trace.points.back();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s T=%ld regret=%.6g se=%.3g\n", trace.policy.c_str(),
                  last.t, last.mean_regret, last.std_error);
    out << buf;
  }
  return 0;
}

PolicyConfig defaults_of(double c, double epsilon, double kl_tol) {
  PolicyConfig d;
  d.c = c;
  d.epsilon = epsilon;
  d.kl_tolerance = kl_tol;
  return d;
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<PolicyConfig> policies;
  for (const auto& token : split_list(a.policies)) {
    policies.push_back(parse_policy(token, defaults_of(a.c, a.epsilon, a.kl_tol)));
  }
  const auto rows = bench(policies, a.samples, a.seed);
  write_timing_csv(a.out, rows);
  write_timing_csv(out, rows);
  return 0;
}

int do_index(const IndexArgs& a, std::ostream& out) {
  const PolicyConfig cfg = parse_policy(a.policy, defaults_of(a.c, a.epsilon, a.kl_tol));
  const double p = UnitScalar(a.mean);
  if (a.pulls < 1) throw std::invalid_argument("--pulls must be >= 1");
  ArmStatistics arm{a.pulls, p * static_cast<double>(a.pulls)};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g\n", Policy(cfg).index(arm, a.t));
  out << buf;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"UCB index policies and bandit regret simulation"};
  app.name("ucboost");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Regret simulation, writes a regret CSV");
  simulate_cmd->add_option("--scenario", sim.scenario, "Preset name or file:PATH")->required();
  simulate_cmd->add_option("--policies", sim.policies, "Comma-separated policy tokens")
      ->required();
  simulate_cmd->add_option("--horizon", sim.horizon, "Horizon T")->capture_default_str();
  simulate_cmd->add_option("--runs", sim.runs, "Replications R")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate_cmd->add_option("--c", sim.c, "Exploration constant")->capture_default_str();
  simulate_cmd->add_option("--epsilon", sim.epsilon, "Default eps for ucboost_eps")
      ->capture_default_str();
  simulate_cmd->add_option("--kl-tol", sim.kl_tol, "Default tolerance for klucb_ref")
      ->capture_default_str();
  simulate_cmd->add_option("--stride", sim.stride, "Record every N steps")->capture_default_str();
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads, 0 for all cores")
      ->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "Output CSV path")->required();

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Per-call index latency, writes a timing CSV");
  bench_cmd->add_option("--policies", bn.policies, "Comma-separated policy tokens")->required();
  bench_cmd->add_option("--samples", bn.samples, "Timed calls per policy")->capture_default_str();
  bench_cmd->add_option("--seed", bn.seed, "Seed of the input trajectory")->capture_default_str();
  bench_cmd->add_option("--c", bn.c, "Exploration constant")->capture_default_str();
  bench_cmd->add_option("--epsilon", bn.epsilon, "Default eps for ucboost_eps")
      ->capture_default_str();
  bench_cmd->add_option("--kl-tol", bn.kl_tol, "Default tolerance for klucb_ref")
      ->capture_default_str();
  bench_cmd->add_option("--out", bn.out, "Output CSV path")->required();

  IndexArgs ix;
  auto* index_cmd = app.add_subcommand("index", "Print one upper confidence bound");
  index_cmd->add_option("--policy", ix.policy, "Policy token")->required();
  index_cmd->add_option("--mean", ix.mean, "Empirical mean p")->required();
  index_cmd->add_option("--pulls", ix.pulls, "Pull count N")->required();
  index_cmd->add_option("--t", ix.t, "Round t")->required();
  index_cmd->add_option("--c", ix.c, "Exploration constant")->capture_default_str();
  index_cmd->add_option("--epsilon", ix.epsilon, "Default eps for ucboost_eps")
      ->capture_default_str();
  index_cmd->add_option("--kl-tol", ix.kl_tol, "Default tolerance for klucb_ref")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate_cmd) return do_simulate(sim, out);
    if (*bench_cmd) return do_bench(bn, out);
    return do_index(ix, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace ucboost
