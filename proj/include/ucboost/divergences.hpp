#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ucboost/unit_scalar.hpp"

namespace ucboost {

/// Semi-distance families on the unit square.
///
///   kl    Bernoulli Kullback-Leibler divergence (strong, reference)
///   sq    2(p-q)^2, the UCB1 distance (strong)
///   bq    biquadratic 2(p-q)^2 + 4/9 (p-q)^4 (strong)
///   h     twice the squared Hellinger distance (strong)
///   lb    p log p + (1-p) log((1-p)/(1-q)), an unbounded lower bound of kl (candidate)
///   t     shifted tangent line of kl(p, .) at (1+p)/2 (candidate)
///   step  d_kl(p, q_k) 1{q > q_k} with q_k = 1 - (1-eta)^k (semi-distance when q_k >= p)
enum class Family { kl, sq, bq, h, lb, t, step };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Identifies one divergence; the unit of solver dispatch.
struct DivergenceSpec {
  Family family = Family::kl;
  int step_index = 0;     // k, step family only
  double step_eta = 0.0;  // eta in (0,1), step family only

  /// Parameterless family. Throws for Family::step.
  static DivergenceSpec of(Family family);
  /// Step function with threshold 1 - (1-eta)^k.
  static DivergenceSpec step(int k, double eta);

  /// q_k for the step family.
  double threshold() const;

  /// Strong semi-distance on the whole unit square (kl, sq, bq, h).
  bool is_strong() const;
  /// Has a closed-form P1 solution (everything except kl).
  bool has_closed_form() const { return family != Family::kl; }

  std::string name() const;

  friend bool operator==(const DivergenceSpec&, const DivergenceSpec&) = default;
};

/// q_k = 1 - (1-eta)^k, computed from log(1-eta) so that every caller
/// (grids, tables, step specs) produces the same bits for the same k.
double step_threshold(long k, double log_one_minus_eta);

/// Bernoulli KL divergence with 0 log 0 = 0 and x log(x/0) = +inf.
ExtendedReal kl_bernoulli(double p, double q);

/// Exact value of the divergence at (p, q).
ExtendedReal evaluate(const DivergenceSpec& d, UnitScalar p, UnitScalar q);

/// max{ q in [0,1] : d(p, q) <= delta } in closed form.
///
/// Throws std::invalid_argument for delta <= 0, for the kl family (no closed
/// form, see kl_approx.hpp) and for a step spec whose threshold lies below p.
UnitScalar solve_p1_closed_form(const DivergenceSpec& d, UnitScalar p, double delta);

// Unchecked closed forms on raw doubles, used on the hot index path.
// Preconditions: 0 <= p < 1, delta > 0.
namespace closed_form {
double sq(double p, double delta);
double bq(double p, double delta);
double h(double p, double delta);
double lb(double p, double delta);
double t(double p, double delta);
}  // namespace closed_form

}  // namespace ucboost
