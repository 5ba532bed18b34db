#include "ucboost/kl_approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucboost/divergences.hpp"

namespace ucboost {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_step_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("approximation error eps must lie in (0,1)");
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

// Thresholds computed directly from log(1-eta).
struct DirectThresholds {
  double log_one_minus_eta;
  double threshold(long k) const { return step_threshold(k, log_one_minus_eta); }
  double log_threshold(long k) const { return std::log(threshold(k)); }
  double log_one_minus_threshold(long k) const {
    return static_cast<double>(k) * log_one_minus_eta;
  }
};

// Smallest k with q_k >= target, starting from the closed-form ceiling and
// correcting for rounding in either direction.
template <class Grid>
long first_index_at_or_above(const Grid& grid, double ratio, double target) {
  long k = static_cast<long>(std::max(0.0, std::ceil(ratio)));
  while (k > 0 && grid.threshold(k - 1) >= target) --k;
  while (grid.threshold(k) < target) ++k;
  return k;
}

// tau1 and tau2 given log(1-p).
template <class Grid>
void fill_taus(const Grid& grid, double p, double log_one_minus_p, double eps,
               double log_one_minus_eta, long& tau1, long& tau2) {
  tau1 = first_index_at_or_above(grid, log_one_minus_p / log_one_minus_eta, p);
  if (p > 0.0) {
    const double target = std::exp(-eps / p);
    tau2 = first_index_at_or_above(grid, std::log1p(-target) / log_one_minus_eta, target);
  } else {
    tau2 = 0;
  }
}

// Step-function bisection on any grid exposing threshold, log_threshold and
// log_one_minus_threshold. Requires 0 <= p < 1.
template <class Grid>
double step_search(const Grid& grid, double p, double delta, double eps,
                   double log_one_minus_eta, SearchStats* stats) {
  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  s = SearchStats{};

  const double log_one_minus_p = std::log1p(-p);
  long tau1 = 0;
  long tau2 = 0;
  fill_taus(grid, p, log_one_minus_p, eps, log_one_minus_eta, tau1, tau2);

  const double p_log_p = xlogx(p);
  const double sq_cap = p + std::sqrt(delta / 2.0);
  auto lower_bound_solution = [&] {
    const double q = 1.0 - (1.0 - p) * std::exp((p_log_p - delta) / (1.0 - p));
    return q < 1.0 ? q : std::nextafter(1.0, 0.0);
  };
  if (tau1 > tau2) {
    s.branch = SearchStats::Branch::empty_window;
    return std::min({lower_bound_solution(), sq_cap, 1.0});
  }

  // d_kl(p, q_k) = p log p + (1-p) log(1-p) - p log q_k - (1-p) log(1-q_k)
  const double neg_entropy = p_log_p + (1.0 - p) * log_one_minus_p;
  auto kl_at = [&](long k) {
    const double head = p > 0.0 ? p * grid.log_threshold(k) : 0.0;
    return neg_entropy - head - (1.0 - p) * grid.log_one_minus_threshold(k);
  };

  double q;
  if (kl_at(tau2) < delta) {
    s.branch = SearchStats::Branch::lower_bound;
    q = lower_bound_solution();
  } else if (kl_at(tau1) >= delta) {
    s.branch = SearchStats::Branch::first_step;
    s.k = tau1;
    q = grid.threshold(tau1);
  } else {
    // Invariant: kl_at(lo) < delta <= kl_at(hi).
    s.branch = SearchStats::Branch::bisection;
    long lo = tau1;
    long hi = tau2;
    while (hi - lo > 1) {
      ++s.iterations;
      const long mid = lo + (hi - lo) / 2;
      const bool below = kl_at(mid) < delta;
      lo = below ? mid : lo;
      hi = below ? hi : mid;
    }
    s.k = hi;
    q = grid.threshold(hi);
  }
  return std::min({q, sq_cap, 1.0});
}

}  // namespace

double StepGrid::threshold(long k) const { return step_threshold(k, log_one_minus_eta); }

StepGrid build_step_grid(UnitScalar p_in, double eps) {
  require_step_eps(eps);
  const double p = p_in;
  if (p >= 1.0) throw std::invalid_argument("step grid needs p < 1");
  StepGrid g;
  g.p = p;
  g.eps = eps;
  g.eta = eps / (1.0 + eps);
  g.log_one_minus_eta = -std::log1p(eps);
  fill_taus(DirectThresholds{g.log_one_minus_eta}, p, std::log1p(-p), eps, g.log_one_minus_eta,
            g.tau1, g.tau2);
  return g;
}

double AltGrid::threshold(long k) const {
  if (k == 0) return 1.0;
  return std::exp(-static_cast<double>(k) * eps / p);
}

AltGrid build_alt_grid(UnitScalar p_in, double eps) {
  require_positive(eps, "approximation error eps");
  const double p = p_in;
  AltGrid g;
  g.p = p;
  g.eps = eps;
  g.cap = static_cast<long>(std::floor(-xlogx(p) / eps));
  return g;
}

UnitScalar solve_ucboost_eps(UnitScalar p_in, double delta, double eps, SearchStats* stats) {
  require_positive(delta, "exploration bonus delta");
  require_step_eps(eps);
  const double p = p_in;
  if (p >= 1.0) {
    if (stats) *stats = SearchStats{};
    return 1.0;
  }
  const double log_one_minus_eta = -std::log1p(eps);
  return step_search(DirectThresholds{log_one_minus_eta}, p, delta, eps, log_one_minus_eta, stats);
}

StepApproxSolver::StepApproxSolver(double eps)
    : eps_(eps), log_one_minus_eta_(-std::log1p(eps)) {
  require_step_eps(eps);
  // tau2(p) is largest as p -> 1, where the target threshold is exp(-eps).
  const DirectThresholds direct{log_one_minus_eta_};
  const double target = std::exp(-eps);
  const long top =
      first_index_at_or_above(direct, std::log1p(-target) / log_one_minus_eta_, target) + 2;
  q_.resize(static_cast<std::size_t>(top));
  log_q_.resize(static_cast<std::size_t>(top));
  for (long k = 0; k < top; ++k) {
    q_[static_cast<std::size_t>(k)] = direct.threshold(k);
    log_q_[static_cast<std::size_t>(k)] = direct.log_threshold(k);
  }
}

double StepApproxSolver::threshold(long k) const {
  return static_cast<std::size_t>(k) < q_.size() ? q_[static_cast<std::size_t>(k)]
                                                 : step_threshold(k, log_one_minus_eta_);
}

double StepApproxSolver::log_threshold(long k) const {
  return static_cast<std::size_t>(k) < log_q_.size()
             ? log_q_[static_cast<std::size_t>(k)]
             : std::log(step_threshold(k, log_one_minus_eta_));
}

double StepApproxSolver::log_one_minus_threshold(long k) const {
  return static_cast<double>(k) * log_one_minus_eta_;
}

double StepApproxSolver::solve(double p, double delta, SearchStats* stats) const {
  if (p >= 1.0) {
    if (stats) *stats = SearchStats{};
    return 1.0;
  }
  return step_search(*this, p, delta, eps_, log_one_minus_eta_, stats);
}

UnitScalar solve_klucb_alt(UnitScalar p_in, double delta, double eps, SearchStats* stats) {
  require_positive(delta, "exploration bonus delta");
  require_positive(eps, "approximation error eps");
  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  s = SearchStats{};
  const double p = p_in;
  if (p >= 1.0) return 1.0;

  const AltGrid g = build_alt_grid(p, eps);
  auto kl_at = [&](long k) { return kl_bernoulli(p, g.threshold(k)); };

  // Largest k in [0, cap] with d_kl(p, q_k) >= delta; q_0 = 1 always qualifies.
  long k = 0;
  s.branch = SearchStats::Branch::bisection;
  if (g.cap > 0) {
    if (kl_at(g.cap) >= delta) {
      k = g.cap;
    } else {
      long lo = 0;  // kl_at(lo) >= delta
      long hi = g.cap;  // kl_at(hi) < delta
      while (hi - lo > 1) {
        ++s.iterations;
        const long mid = lo + (hi - lo) / 2;
        if (kl_at(mid) >= delta) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      k = lo;
    }
  }
  s.k = k;
  const double exponent = (xlogx(p) - delta + static_cast<double>(k) * eps) / (1.0 - p);
  const double q = 1.0 - (1.0 - p) * std::exp(exponent);
  return std::min(q, 1.0);
}

UnitScalar solve_klucb_reference(UnitScalar p_in, double delta, double tol) {
  require_positive(delta, "exploration bonus delta");
  require_positive(tol, "tolerance");
  const double p = p_in;
  if (p >= 1.0) return 1.0;
  double lo = p;
  double hi = 1.0;
  while (hi - lo >= tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (kl_bernoulli(p, mid) <= delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace ucboost
