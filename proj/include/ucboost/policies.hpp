#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ucboost/divergences.hpp"
#include "ucboost/kl_approx.hpp"
#include "ucboost/unit_scalar.hpp"

namespace ucboost {

/// Pull count N_a(t) and reward sum S_a for one arm.
struct ArmStatistics {
  long pulls = 0;
  double reward_sum = 0.0;

  /// Empirical mean; throws std::logic_error when the arm was never pulled.
  UnitScalar mean() const;
};

enum class PolicyKind { ucb1, ucb_bq, ucb_h, ucboost_d, ucboost_eps, klucb_ref, klucb_general };

std::string_view to_string(PolicyKind kind);

/// {bq, h, lb}
std::vector<DivergenceSpec> default_boost_set();

/// True when the set contains at least one strong semi-distance and only
/// families with a closed-form solution.
bool is_feasible_set(const std::vector<DivergenceSpec>& divs);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::ucb1;
  double c = 0.0;
  double epsilon = 0.01;                       // ucboost_eps
  double kl_tolerance = kReferenceTolerance;   // klucb_ref
  std::vector<DivergenceSpec> divergences = default_boost_set();  // ucboost_D

  /// Throws std::invalid_argument on c < 0, eps outside (0,1) for ucboost_eps,
  /// a nonpositive tolerance or an infeasible divergence set.
  void validate() const;

  /// Canonical token accepted by parse_policy, e.g. "ucboost_eps:0.01" or
  /// "ucboost_D:bq+h+lb".
  std::string name() const;
};

/// Parses a policy token: ucb1, ucb_bq, ucb_h, klucb_general,
/// ucboost_D[:d1+d2+...], ucboost_eps[:eps], klucb_ref[:tol].
/// Unspecified parameters come from `defaults`. Throws std::invalid_argument.
PolicyConfig parse_policy(std::string_view token, const PolicyConfig& defaults = {});

/// (log t + c log(max(1, log t))) / pulls
double exploration_bonus(long t, long pulls, double c);

/// min over d in divs of the closed-form P1(d) solution.
UnitScalar ucboost_index(const std::vector<DivergenceSpec>& divs, UnitScalar p, double delta);

/// Per-arm statistics plus the number of decisions taken so far.
struct PolicyState {
  std::vector<ArmStatistics> arms;
  long t = 0;
  // Reward value -> count per arm, kept only when tracking is on (klucb_general).
  std::vector<std::map<double, long>> observations;

  explicit PolicyState(std::size_t arm_count, bool track_observations = false);

  std::size_t arm_count() const { return arms.size(); }
  bool tracks_observations() const { return !observations.empty(); }
};

/// Upper confidence bound of one arm at round t.
/// klucb_general without recorded observations treats the arm as Bernoulli.
/// Throws std::invalid_argument for pulls < 1 or t < 2.
double index(const PolicyConfig& cfg, const ArmStatistics& arm, long t);

/// Records one pull. Rewards within 1e-12 of [0,1] are clamped, others rejected.
void update(PolicyState& state, std::size_t arm, double reward);

/// Validated config plus precomputed solver tables; the form used in simulation.
class Policy {
 public:
  explicit Policy(PolicyConfig cfg);

  const PolicyConfig& config() const { return cfg_; }
  std::string name() const { return cfg_.name(); }

  double index(const ArmStatistics& arm, long t) const;
  /// Uses the arm's recorded observations when the state tracks them.
  double index(const PolicyState& state, std::size_t arm) const;

  /// First K decisions play arm t; afterwards the argmax of the index at round
  /// t+1, lowest arm id on ties.
  std::size_t select_arm(const PolicyState& state) const;

 private:
  PolicyConfig cfg_;
  std::optional<StepApproxSolver> step_;
};

std::size_t select_arm(const PolicyState& state, const PolicyConfig& cfg);

}  // namespace ucboost
