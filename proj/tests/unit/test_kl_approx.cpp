#include <doctest.h>

#include <cmath>
#include <random>

#include "ucboost/divergences.hpp"
#include "ucboost/kl_approx.hpp"

using namespace ucboost;

namespace {

int ceil_log2(long n) {
  int bits = 0;
  while ((1L << bits) < n) ++bits;
  return bits;
}

// max over {d_sq, d_lb, d_s^tau1 .. d_s^tau2} at (p, q)
double approx_max(const StepGrid& g, double p, double q) {
  double best = std::max(evaluate(DivergenceSpec::of(Family::sq), p, q),
                         evaluate(DivergenceSpec::of(Family::lb), p, q));
  for (long k = g.tau1; k <= g.tau2; ++k) {
    if (q > g.threshold(k)) best = std::max(best, kl_bernoulli(p, g.threshold(k)));
  }
  return best;
}

}  // namespace

TEST_CASE("step grid: reference values") {
  const StepGrid g = build_step_grid(0.3, 0.2);
  CHECK(g.eta == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(g.tau1 == 2);
  CHECK(g.tau2 == 4);
  CHECK(g.threshold(2) == doctest::Approx(0.30555555555555556).epsilon(1e-14));
  CHECK(g.threshold(4) == doctest::Approx(0.51774691358024691).epsilon(1e-14));
  CHECK(g.threshold(4) >= std::exp(-0.2 / 0.3));

  const StepGrid z = build_step_grid(0.0, 0.1);
  CHECK(z.tau1 == 0);
  CHECK(z.tau2 == 0);

  const StepGrid wide = build_step_grid(0.5, 1.0 - 1e-9);
  CHECK(wide.tau1 >= 0);
  CHECK(wide.tau2 >= 0);
  CHECK(wide.tau2 < 100);

  CHECK_THROWS_AS(build_step_grid(0.3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_step_grid(0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_step_grid(1.0, 0.1), std::invalid_argument);
}

TEST_CASE("step grid: taus are the minimal indices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(0.0, 0.999);
  for (double eps : {0.01, 0.05, 0.2, 0.7}) {
    for (int n = 0; n < 500; ++n) {
      const double p = up(rng);
      const StepGrid g = build_step_grid(p, eps);
      CHECK(g.threshold(g.tau1) >= p);
      if (g.tau1 > 0) CHECK(g.threshold(g.tau1 - 1) < p);
      const double target = std::exp(-eps / p);
      if (p > 0.0) {
        CHECK(g.threshold(g.tau2) >= target);
        if (g.tau2 > 0) CHECK(g.threshold(g.tau2 - 1) < target);
      }
      for (long k = 0; k < 50; ++k) CHECK(g.threshold(k + 1) > g.threshold(k));
    }
  }
}

TEST_CASE("tau1 > tau2 occurs for p near 1") {
  const StepGrid g = build_step_grid(0.999, 0.01);
  CHECK(g.tau1 > g.tau2);
  SearchStats stats;
  const double q = solve_ucboost_eps(0.999, 0.01, 0.01, &stats);
  CHECK(stats.branch == SearchStats::Branch::empty_window);
  CHECK(q >= solve_klucb_reference(0.999, 0.01).value());
  CHECK(kl_bernoulli(0.999, q) <= 0.01 + 0.01);
}

TEST_CASE("ucboost_eps: reference trace") {
  SearchStats stats;
  const double q = solve_ucboost_eps(0.3, 0.05, 0.2, &stats);
  CHECK(stats.branch == SearchStats::Branch::bisection);
  CHECK(stats.k == 4);
  CHECK(q == doctest::Approx(0.458113883008419).epsilon(1e-14));
  CHECK(q >= solve_klucb_reference(0.3, 0.05).value());
  CHECK(kl_bernoulli(0.3, q) == doctest::Approx(0.0522165309).epsilon(1e-8));

  const double saturated = solve_ucboost_eps(0.4, 50.0, 0.1).value();
  CHECK(saturated < 1.0);
  CHECK(saturated == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(solve_ucboost_eps(1.0, 0.3, 0.1).value() == 1.0);
  CHECK_THROWS_AS(solve_ucboost_eps(0.3, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(solve_ucboost_eps(0.3, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("ucboost_eps: sandwich and iteration bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ud(1e-4, 5.0);
  for (double eps : {0.01, 0.05, 0.2}) {
    for (int n = 0; n < 3000; ++n) {
      const double p = up(rng);
      const double delta = ud(rng);
      SearchStats stats;
      const double q = solve_ucboost_eps(p, delta, eps, &stats);
      CHECK(solve_klucb_reference(p, delta).value() <= q);
      // kl(p, .) cannot be evaluated reliably within a few ulps of 1
      if (1.0 - q > 1e-9) CHECK(kl_bernoulli(p, q) <= delta + eps);
      if (stats.branch == SearchStats::Branch::bisection) {
        const StepGrid g = build_step_grid(p, eps);
        CHECK(stats.iterations <= ceil_log2(g.tau2 - g.tau1 + 1) + 1);
      }
    }
  }
}

TEST_CASE("ucboost_eps: bisection agrees with exhaustive scan") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> up(0.01, 0.99);
  std::uniform_real_distribution<double> ud(1e-3, 2.0);
  int scanned = 0;
  for (int n = 0; n < 3000; ++n) {
    const double p = up(rng);
    const double delta = ud(rng);
    const double eps = 0.05;
    SearchStats stats;
    solve_ucboost_eps(p, delta, eps, &stats);
    if (stats.branch != SearchStats::Branch::bisection) continue;
    const StepGrid g = build_step_grid(p, eps);
    long first = -1;
    for (long k = g.tau1; k <= g.tau2; ++k) {
      if (kl_bernoulli(p, g.threshold(k)) >= delta) {
        first = k;
        break;
      }
    }
    CHECK(stats.k == first);
    ++scanned;
  }
  CHECK(scanned > 500);
}

TEST_CASE("step functions approximate kl within eps") {
  for (double eps : {0.01, 0.05, 0.2}) {
    for (int i = 1; i <= 19; ++i) {
      const double p = 0.05 * i;
      const StepGrid g = build_step_grid(p, eps);
      for (int j = 0; j <= 400; ++j) {
        const double q = p + (1.0 - p) * j / 400.0;
        const double gap = kl_bernoulli(p, q) - approx_max(g, p, q);
        if (!std::isfinite(gap)) continue;
        CHECK(gap >= 0.0);
        CHECK(gap <= eps + 1e-12);
      }
    }
  }
}

TEST_CASE("tabulated solver matches the free function bit for bit") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ud(1e-4, 5.0);
  for (double eps : {0.01, 0.2}) {
    const StepApproxSolver solver(eps);
    for (int n = 0; n < 5000; ++n) {
      const double p = n % 50 == 0 ? 0.0 : up(rng);
      const double delta = ud(rng);
      SearchStats a;
      SearchStats b;
      const double x = solve_ucboost_eps(p, delta, eps, &a);
      const double y = solver.solve(p, delta, &b);
      CHECK(x == y);
      CHECK(a.k == b.k);
      CHECK(a.iterations == b.iterations);
    }
  }
}

TEST_CASE("alternative search: reference trace") {
  const AltGrid g = build_alt_grid(0.5, 0.1);
  CHECK(g.cap == 3);
  CHECK(g.threshold(3) >= 0.5);
  CHECK(g.threshold(4) < 0.5);
  SearchStats stats;
  const double q = solve_klucb_alt(0.5, 0.15, 0.1, &stats);
  CHECK(stats.k == 1);
  CHECK(q == doctest::Approx(0.7737906454910101).epsilon(1e-13));
  CHECK(kl_bernoulli(0.5, q) == doctest::Approx(0.178226963).epsilon(1e-8));
  CHECK(q >= solve_klucb_reference(0.5, 0.15).value());

  CHECK(solve_klucb_alt(1.0, 0.2, 0.1).value() == 1.0);
  CHECK(solve_klucb_alt(0.0, 0.2, 0.1).value() ==
        doctest::Approx(solve_p1_closed_form(DivergenceSpec::of(Family::lb), 0.0, 0.2).value()));
  CHECK_THROWS_AS(solve_klucb_alt(0.5, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(solve_klucb_alt(0.5, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("alternative search: guarantees and iteration bound") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> up(1e-3, 0.999);
  std::uniform_real_distribution<double> ud(1e-4, 5.0);
  for (double eps : {0.01, 0.05, 0.2}) {
    for (int n = 0; n < 3000; ++n) {
      const double p = up(rng);
      const double delta = ud(rng);
      SearchStats stats;
      const double q = solve_klucb_alt(p, delta, eps, &stats);
      const double star = solve_klucb_reference(p, delta, 1e-13);
      CHECK(q >= star);
      const AltGrid g = build_alt_grid(p, eps);
      CHECK(stats.iterations <= ceil_log2(g.cap + 1) + 1);
      CHECK(stats.iterations <= ceil_log2(static_cast<long>(std::ceil(1.0 / (std::exp(1.0) * eps)))) + 2);
      if (1.0 - star < 1e-9) continue;
      const double gap = kl_bernoulli(p, q) - kl_bernoulli(p, star);
      CHECK(gap >= -1e-9);
      CHECK(gap <= eps + 1e-9);
    }
  }
}

TEST_CASE("reference bisection") {
  const double q = solve_klucb_reference(0.3, 0.05, 1e-10);
  CHECK(q == doctest::Approx(0.45459683383586337).epsilon(1e-9));
  CHECK(kl_bernoulli(0.3, q) <= 0.05);
  CHECK(solve_klucb_reference(1.0, 0.2, 1e-10).value() == 1.0);
  CHECK_THROWS_AS(solve_klucb_reference(0.5, 0.0, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(solve_klucb_reference(0.5, 0.1, 0.0), std::invalid_argument);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ud(1e-4, 5.0);
  for (int n = 0; n < 2000; ++n) {
    const double p = up(rng);
    const double delta = ud(rng);
    const double r = solve_klucb_reference(p, delta, 1e-10);
    CHECK(kl_bernoulli(p, r) <= delta);
    CHECK(kl_bernoulli(p, std::min(1.0, r + 1e-10)) > delta - 1e-9);
  }
}
