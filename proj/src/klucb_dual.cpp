#include "ucboost/klucb_dual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ucboost/policies.hpp"
#include "ucboost/unit_scalar.hpp"

namespace ucboost {

namespace {

constexpr double kWeightSlack = 1e-12;

// sum p_i / (lambda - alpha_i)
double weighted_inverse_sum(const EmpiricalDistribution& dist, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double w = dist.weights()[i];
    if (w > 0.0) s += w / (lambda - dist.support()[i]);
  }
  return s;
}

double mean_of(const std::vector<double>& support, const std::vector<double>& q) {
  double m = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) m += support[i] * q[i];
  return m;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> support,
                                             std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  const std::size_t n = support_.size();
  if (n == 0) throw std::invalid_argument("empty support");
  if (weights_.size() != n) throw std::invalid_argument("support and weights differ in length");
  if (support_.back() != 1.0) throw std::invalid_argument("last support point must be 1");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(support_[i] >= 0.0 && support_[i] <= 1.0)) {
      throw std::invalid_argument("support point " + std::to_string(support_[i]) +
                                  " outside [0,1]");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw std::invalid_argument("support must be strictly increasing");
    }
    const double w = weights_[i];
    if (!(w >= 0.0)) throw std::invalid_argument("negative weight");
    if (i + 1 < n && !(w > 0.0)) {
      throw std::invalid_argument("only the weight at 1 may be zero");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSlack) {
    throw std::invalid_argument("weights sum to " + std::to_string(total));
  }
}

EmpiricalDistribution EmpiricalDistribution::from_counts(const std::map<double, long>& counts) {
  long total = 0;
  for (const auto& [value, count] : counts) {
    if (count < 0) throw std::invalid_argument("negative observation count");
    total += count;
  }
  if (total == 0) throw std::invalid_argument("no observations");
  std::vector<double> support;
  std::vector<double> weights;
  for (const auto& [value, count] : counts) {
    if (count == 0) continue;
    const double v = UnitScalar(value);
    if (!support.empty() && v == support.back()) {
      weights.back() += static_cast<double>(count) / static_cast<double>(total);
      continue;
    }
    support.push_back(v);
    weights.push_back(static_cast<double>(count) / static_cast<double>(total));
  }
  if (support.back() != 1.0) {
    support.push_back(1.0);
    weights.push_back(0.0);
  }
  return EmpiricalDistribution(std::move(support), std::move(weights));
}

EmpiricalDistribution EmpiricalDistribution::from_observations(const std::vector<double>& values) {
  std::map<double, long> counts;
  for (double v : values) ++counts[UnitScalar(v)];
  return from_counts(counts);
}

EmpiricalDistribution EmpiricalDistribution::bernoulli(double p_in) {
  const double p = UnitScalar(p_in);
  if (p >= 1.0) return EmpiricalDistribution({1.0}, {1.0});
  return EmpiricalDistribution({0.0, 1.0}, {1.0 - p, p});
}

double EmpiricalDistribution::pole() const {
  const std::size_t n = size();
  if (weights_.back() > 0.0 || n == 1) return support_.back();
  return support_[n - 2];
}

double EmpiricalDistribution::mean() const { return mean_of(support_, weights_); }

double f_eval(const EmpiricalDistribution& dist, double lambda) {
  if (!(lambda > dist.pole())) {
    throw std::invalid_argument("lambda must exceed the pole " + std::to_string(dist.pole()));
  }
  double head = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double w = dist.weights()[i];
    if (w > 0.0) head += w * std::log(lambda - dist.support()[i]);
  }
  return head + std::log(weighted_inverse_sum(dist, lambda));
}

double dual_upper_bracket(const EmpiricalDistribution& dist, double delta) {
  const double l = dist.pole();
  return l + (l - dist.support().front()) / (2.0 * std::sqrt(2.0 * delta));
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInfinity;
    s += p[i] * std::log(p[i] / q[i]);
  }
  return s;
}

DualSolution solve_p2(const EmpiricalDistribution& dist, double delta, double tol) {
  if (!(delta > 0.0)) throw std::invalid_argument("exploration bonus delta must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");

  const auto& alpha = dist.support();
  const auto& p = dist.weights();
  const std::size_t n = dist.size();
  DualSolution sol;

  if (n == 1) {
    sol.q = {1.0};
    sol.mean = alpha[0];
    sol.degenerate = true;
    return sol;
  }

  if (p[n - 1] == 0.0) {
    const double f1 = f_eval(dist, 1.0);
    if (f1 < delta) {
      const double shrink = std::exp(f1 - delta);
      double norm = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) norm += p[i] / (1.0 - alpha[i]);
      sol.q.resize(n);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        sol.q[i] = shrink * (p[i] / (1.0 - alpha[i])) / norm;
      }
      sol.q[n - 1] = -std::expm1(f1 - delta);
      sol.mean = mean_of(alpha, sol.q);
      return sol;
    }
  }

  const double l = dist.pole();
  double lo = l * (1.0 + 1e-12) + 1e-300;
  double hi = dual_upper_bracket(dist, delta);
  // Invariant: f(lo) > delta >= f(hi).
  if (f_eval(dist, lo) <= delta) {
    hi = lo;
  } else {
    while (hi - lo > tol * (lo - l)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (f_eval(dist, mid) > delta) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  const double lambda = hi;
  const double norm = weighted_inverse_sum(dist, lambda);
  sol.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.q[i] = p[i] > 0.0 ? (p[i] / (lambda - alpha[i])) / norm : 0.0;
  }
  sol.mean = std::clamp(mean_of(alpha, sol.q), alpha.front(), 1.0);
  sol.lambda = lambda;
  return sol;
}

double klucb_general_index(const EmpiricalDistribution& dist, long t, long pulls, double c) {
  if (t < 2) throw std::invalid_argument("index needs t >= 2");
  return solve_p2(dist, exploration_bonus(t, pulls, c)).mean;
}

}  // namespace ucboost
