#pragma once

#include <vector>

#include "ucboost/unit_scalar.hpp"

namespace ucboost {

/// Thresholds q_k = 1 - (1-eta)^k, eta = eps/(1+eps), restricted to the
/// window [tau1, tau2] where the step functions approximate d_kl(p, .).
struct StepGrid {
  double p = 0.0;
  double eps = 0.0;
  double eta = 0.0;
  double log_one_minus_eta = 0.0;  // log(1-eta) = -log(1+eps)
  long tau1 = 0;                   // smallest k with q_k >= p
  long tau2 = 0;                   // smallest k with q_k >= exp(-eps/p), 0 when p = 0

  double threshold(long k) const;
};

/// Throws std::invalid_argument unless 0 < eps < 1 and p < 1.
StepGrid build_step_grid(UnitScalar p, double eps);

/// Exponential grid q_k = exp(-k eps / p) used by the alternative search.
struct AltGrid {
  double p = 0.0;
  double eps = 0.0;
  long cap = 0;  // L(p) = floor(-p log p / eps); q_k >= p iff k <= cap

  double threshold(long k) const;
};

AltGrid build_alt_grid(UnitScalar p, double eps);

/// Instrumentation filled in by the approximate searches.
struct SearchStats {
  enum class Branch {
    none,           // p = 1 short-circuit
    empty_window,   // tau1 > tau2
    lower_bound,    // d_kl(p, q_tau2) < delta, answered by the d_lb closed form
    first_step,     // d_kl(p, q_tau1) >= delta
    bisection,      // bracket found by bisection over k
  };
  Branch branch = Branch::none;
  int iterations = 0;  // bisection loop iterations
  long k = -1;         // selected grid index, when one was selected
};

/// UCBoost(eps): the P1 solution of max over {d_sq, d_lb, d_s^tau1..d_s^tau2}.
/// Result q satisfies q >= exact kl solution and d_kl(p, q) <= delta + eps.
UnitScalar solve_ucboost_eps(UnitScalar p, double delta, double eps,
                             SearchStats* stats = nullptr);

/// Same search as solve_ucboost_eps with the eps-dependent thresholds and their
/// logarithms tabulated once. Results are bit-identical to the free function.
class StepApproxSolver {
 public:
  explicit StepApproxSolver(double eps);

  double eps() const { return eps_; }
  double solve(double p, double delta, SearchStats* stats = nullptr) const;

  // Grid accessors; indices past the table are computed on the fly.
  double threshold(long k) const;
  double log_threshold(long k) const;
  double log_one_minus_threshold(long k) const;

 private:
  double eps_;
  double log_one_minus_eta_;
  std::vector<double> q_;
  std::vector<double> log_q_;
};

/// Bisection over the grid exp(-k eps / p) followed by the d_lb^k closed form.
/// Result q' satisfies q' >= q* and 0 <= d_kl(p,q') - d_kl(p,q*) <= eps.
UnitScalar solve_klucb_alt(UnitScalar p, double delta, double eps,
                           SearchStats* stats = nullptr);

inline constexpr double kReferenceTolerance = 1e-10;

/// Plain bisection for d_kl(p, q) = delta on [p, 1) down to an interval of
/// width < tol. Returns the lower end, so d_kl(p, result) <= delta.
UnitScalar solve_klucb_reference(UnitScalar p, double delta, double tol = kReferenceTolerance);

}  // namespace ucboost
