#pragma once

#include <map>
#include <optional>
#include <vector>

namespace ucboost {

/// Weights p_1..p_n on a strictly increasing support alpha_1 < ... < alpha_n = 1.
/// Only the last weight may be zero.
class EmpiricalDistribution {
 public:
  /// Throws std::invalid_argument when the invariants fail.
  EmpiricalDistribution(std::vector<double> support, std::vector<double> weights);

  /// Merges repeated values, normalises the counts and appends the point 1 with
  /// weight 0 if it was not observed.
  static EmpiricalDistribution from_observations(const std::vector<double>& values);
  static EmpiricalDistribution from_counts(const std::map<double, long>& counts);
  /// Support {0, 1} with weights (1-p, p); support {1} when p = 1.
  static EmpiricalDistribution bernoulli(double p);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  /// l = alpha_n if p_n > 0, otherwise alpha_{n-1}.
  double pole() const;
  double mean() const;

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
};

struct DualSolution {
  std::vector<double> q;
  double mean = 0.0;
  std::optional<double> lambda;  // absent in the mass-shift branch
  bool degenerate = false;       // single-point support
};

/// sum p_i log(lambda - alpha_i) + log(sum p_i / (lambda - alpha_i)), zero-weight
/// terms omitted. Throws std::invalid_argument for lambda <= pole().
double f_eval(const EmpiricalDistribution& dist, double lambda);

/// l + (l - alpha_1) / (2 sqrt(2 delta)); f there is at most delta.
double dual_upper_bracket(const EmpiricalDistribution& dist, double delta);

/// sum over p_i > 0 of p_i log(p_i / q_i)
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

inline constexpr double kDualTolerance = 1e-12;

/// max sum alpha_i q_i subject to KL(p, q) <= delta over the simplex.
/// The bisection stops once the lambda bracket is narrower than tol times its
/// distance from the pole, and keeps the endpoint with f <= delta.
DualSolution solve_p2(const EmpiricalDistribution& dist, double delta,
                      double tol = kDualTolerance);

/// solve_p2(dist, exploration_bonus(t, pulls, c)).mean
double klucb_general_index(const EmpiricalDistribution& dist, long t, long pulls, double c);

}  // namespace ucboost
