#include "ucboost/policies.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ucboost/klucb_dual.hpp"

namespace ucboost {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::vector<DivergenceSpec> parse_divergence_set(std::string_view text) {
  std::vector<DivergenceSpec> divs;
  while (!text.empty()) {
    const std::size_t plus = text.find('+');
    const std::string_view item = text.substr(0, plus);
    const auto family = parse_family(item);
    if (!family || *family == Family::kl || *family == Family::step) {
      throw std::invalid_argument("divergence '" + std::string(item) +
                                  "' cannot be boosted (use sq, bq, h, lb or t)");
    }
    divs.push_back(DivergenceSpec::of(*family));
    if (plus == std::string_view::npos) break;
    text.remove_prefix(plus + 1);
  }
  return divs;
}

double require_round(long t) {
  if (t < 2) throw std::invalid_argument("index needs t >= 2");
  return static_cast<double>(t);
}

}  // namespace

UnitScalar ArmStatistics::mean() const {
  if (pulls < 1) throw std::logic_error("mean of an arm with no pulls");
  return reward_sum / static_cast<double>(pulls);
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ucb1: return "ucb1";
    case PolicyKind::ucb_bq: return "ucb_bq";
    case PolicyKind::ucb_h: return "ucb_h";
    case PolicyKind::ucboost_d: return "ucboost_D";
    case PolicyKind::ucboost_eps: return "ucboost_eps";
    case PolicyKind::klucb_ref: return "klucb_ref";
    case PolicyKind::klucb_general: return "klucb_general";
  }
  return "?";
}

std::vector<DivergenceSpec> default_boost_set() {
  return {DivergenceSpec::of(Family::bq), DivergenceSpec::of(Family::h),
          DivergenceSpec::of(Family::lb)};
}

bool is_feasible_set(const std::vector<DivergenceSpec>& divs) {
  bool strong = false;
  for (const auto& d : divs) {
    if (!d.has_closed_form()) return false;
    strong = strong || d.is_strong();
  }
  return strong;
}

void PolicyConfig::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("exploration constant c must be >= 0");
  }
  switch (kind) {
    case PolicyKind::ucboost_eps:
      if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0,1), got " + format_real(epsilon));
      }
      break;
    case PolicyKind::klucb_ref:
      if (!(kl_tolerance > 0.0)) throw std::invalid_argument("kl tolerance must be > 0");
      break;
    case PolicyKind::ucboost_d:
      if (divergences.empty()) throw std::invalid_argument("empty divergence set");
      if (!is_feasible_set(divergences)) {
        throw std::invalid_argument("divergence set needs a strong semi-distance (sq, bq or h)");
      }
      break;
    default:
      break;
  }
}

std::string PolicyConfig::name() const {
  std::string s(to_string(kind));
  switch (kind) {
    case PolicyKind::ucboost_eps: return s + ":" + format_real(epsilon);
    case PolicyKind::klucb_ref: return s + ":" + format_real(kl_tolerance);
    case PolicyKind::ucboost_d:
      for (std::size_t i = 0; i < divergences.size(); ++i) {
        s += i ? '+' : ':';
        s += divergences[i].name();
      }
      return s;
    default: return s;
  }
}

PolicyConfig parse_policy(std::string_view token, const PolicyConfig& defaults) {
  const std::size_t colon = token.find(':');
  const std::string_view head = token.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  PolicyConfig cfg = defaults;
  if (head == "ucb1") {
    cfg.kind = PolicyKind::ucb1;
  } else if (head == "ucb_bq") {
    cfg.kind = PolicyKind::ucb_bq;
  } else if (head == "ucb_h") {
    cfg.kind = PolicyKind::ucb_h;
  } else if (head == "klucb_general") {
    cfg.kind = PolicyKind::klucb_general;
  } else if (head == "ucboost_D") {
    cfg.kind = PolicyKind::ucboost_d;
    if (has_arg) cfg.divergences = parse_divergence_set(arg);
  } else if (head == "ucboost_eps") {
    cfg.kind = PolicyKind::ucboost_eps;
    if (has_arg) cfg.epsilon = parse_real(arg, "epsilon");
  } else if (head == "klucb_ref") {
    cfg.kind = PolicyKind::klucb_ref;
    if (has_arg) cfg.kl_tolerance = parse_real(arg, "kl tolerance");
  } else {
    throw std::invalid_argument("unknown policy '" + std::string(token) + "'");
  }
  const bool takes_arg = cfg.kind == PolicyKind::ucboost_d ||
                         cfg.kind == PolicyKind::ucboost_eps ||
                         cfg.kind == PolicyKind::klucb_ref;
  if (has_arg && !takes_arg) {
    throw std::invalid_argument("policy '" + std::string(head) + "' takes no parameter");
  }
  cfg.validate();
  return cfg;
}

double exploration_bonus(long t, long pulls, double c) {
  if (t < 1) throw std::invalid_argument("round t must be >= 1");
  if (pulls < 1) throw std::invalid_argument("arm must have been pulled at least once");
  const double log_t = std::log(static_cast<double>(t));
  return (log_t + c * std::log(std::max(1.0, log_t))) / static_cast<double>(pulls);
}

UnitScalar ucboost_index(const std::vector<DivergenceSpec>& divs, UnitScalar p_in, double delta) {
  if (divs.empty()) throw std::invalid_argument("empty divergence set");
  if (!(delta > 0.0)) throw std::invalid_argument("exploration bonus delta must be > 0");
  const double p = p_in;
  if (p >= 1.0) return 1.0;
  double best = 1.0;
  for (const auto& d : divs) {
    double q = 1.0;
    switch (d.family) {
      case Family::sq: q = closed_form::sq(p, delta); break;
      case Family::bq: q = closed_form::bq(p, delta); break;
      case Family::h: q = closed_form::h(p, delta); break;
      case Family::lb: q = closed_form::lb(p, delta); break;
      case Family::t: q = closed_form::t(p, delta); break;
      default: q = solve_p1_closed_form(d, p, delta); break;
    }
    best = std::min(best, q);
  }
  return best;
}

PolicyState::PolicyState(std::size_t arm_count, bool track_observations) : arms(arm_count) {
  if (track_observations) observations.resize(arm_count);
}

double index(const PolicyConfig& cfg, const ArmStatistics& arm, long t) {
  require_round(t);
  const double delta = exploration_bonus(t, arm.pulls, cfg.c);
  const double p = arm.mean();
  if (p >= 1.0) return 1.0;
  switch (cfg.kind) {
    case PolicyKind::ucb1: return closed_form::sq(p, delta);
    case PolicyKind::ucb_bq: return closed_form::bq(p, delta);
    case PolicyKind::ucb_h: return closed_form::h(p, delta);
    case PolicyKind::ucboost_d: return ucboost_index(cfg.divergences, p, delta);
    case PolicyKind::ucboost_eps: return solve_ucboost_eps(p, delta, cfg.epsilon);
    case PolicyKind::klucb_ref: return solve_klucb_reference(p, delta, cfg.kl_tolerance);
    case PolicyKind::klucb_general:
      return solve_p2(EmpiricalDistribution::bernoulli(p), delta).mean;
  }
  return 1.0;
}

void update(PolicyState& state, std::size_t arm, double reward) {
  if (arm >= state.arms.size()) {
    throw std::invalid_argument("arm id " + std::to_string(arm) + " out of range");
  }
  const double r = UnitScalar(reward);
  ArmStatistics& a = state.arms[arm];
  a.pulls += 1;
  a.reward_sum += r;
  if (state.tracks_observations()) ++state.observations[arm][r];
  state.t += 1;
}

Policy::Policy(PolicyConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  if (cfg_.kind == PolicyKind::ucboost_eps) step_.emplace(cfg_.epsilon);
}

double Policy::index(const ArmStatistics& arm, long t) const {
  if (cfg_.kind != PolicyKind::ucboost_eps) return ucboost::index(cfg_, arm, t);
  require_round(t);
  const double p = arm.mean();
  const double delta = exploration_bonus(t, arm.pulls, cfg_.c);
  return step_->solve(p, delta);
}

double Policy::index(const PolicyState& state, std::size_t arm) const {
  const long t = state.t + 1;
  if (cfg_.kind == PolicyKind::klucb_general && state.tracks_observations()) {
    require_round(t);
    const ArmStatistics& a = state.arms.at(arm);
    if (a.mean() >= 1.0) return 1.0;
    const auto dist = EmpiricalDistribution::from_counts(state.observations[arm]);
    return klucb_general_index(dist, t, a.pulls, cfg_.c);
  }
  return index(state.arms.at(arm), t);
}

std::size_t Policy::select_arm(const PolicyState& state) const {
  const std::size_t k = state.arm_count();
  if (k == 0) throw std::invalid_argument("no arms");
  if (state.t < static_cast<long>(k)) return static_cast<std::size_t>(state.t);
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < k; ++a) {
    const double v = index(state, a);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return best;
}

std::size_t select_arm(const PolicyState& state, const PolicyConfig& cfg) {
  return Policy(cfg).select_arm(state);
}

}  // namespace ucboost
