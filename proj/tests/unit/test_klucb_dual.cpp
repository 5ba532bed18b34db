#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ucboost/kl_approx.hpp"
#include "ucboost/klucb_dual.hpp"
#include "ucboost/policies.hpp"

using namespace ucboost;

namespace {

EmpiricalDistribution three_point() { return EmpiricalDistribution({0.0, 0.5, 1.0}, {0.5, 0.5, 0.0}); }

EmpiricalDistribution random_dist(std::mt19937_64& rng, std::size_t n, bool last_zero) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts;
  while (pts.size() < n - 1) {
    const double a = std::round(u(rng) * 1000.0) / 1000.0;
    if (a < 1.0 && std::find(pts.begin(), pts.end(), a) == pts.end()) pts.push_back(a);
  }
  std::sort(pts.begin(), pts.end());
  pts.push_back(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = 0.05 + u(rng);
  if (last_zero) w.back() = 0.0;
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= s;
  return EmpiricalDistribution(pts, w);
}

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(three_point());
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 0.5}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution({0.5, 0.2, 1.0}, {0.3, 0.3, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 1.0}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 0.5, 1.0}, {0.5, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 1.0}, {1.0}), std::invalid_argument);

  const auto d = EmpiricalDistribution::from_observations({0.2, 0.7, 0.2, 0.2});
  REQUIRE(d.size() == 3);
  CHECK(d.support() == std::vector<double>{0.2, 0.7, 1.0});
  CHECK(d.weights()[0] == doctest::Approx(0.75));
  CHECK(d.weights()[2] == 0.0);
  CHECK(d.pole() == 0.7);
  CHECK(EmpiricalDistribution::from_observations({1.0, 0.0}).pole() == 1.0);
}

TEST_CASE("f: reference values and shape") {
  const auto d = three_point();
  CHECK(f_eval(d, 1.0) == doctest::Approx(0.058891517828191727).epsilon(1e-14));
  CHECK(f_eval(d, 1.75) == doctest::Approx(0.014085438483348161).epsilon(1e-14));
  CHECK(std::abs(f_eval(d, 1e8)) < 1e-6);
  CHECK_THROWS_AS(f_eval(d, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(f_eval(d, 0.2), std::invalid_argument);

  std::mt19937_64 rng(43);
  for (int n = 0; n < 200; ++n) {
    const auto dist = random_dist(rng, 2 + n % 6, n % 2 == 0);
    const double l = dist.pole();
    if (l == dist.support().front()) continue;
    double prev = kInfinity;
    for (double gap = 1e-6; gap < 1e4; gap *= 1.5) {
      const double f = f_eval(dist, l + gap);
      CHECK(f < prev);
      CHECK(f <= std::pow(l - dist.support().front(), 2) / (8.0 * gap * gap) + 1e-10);
      prev = f;
    }
  }
}

TEST_CASE("solve_p2: mass-shift branch") {
  const DualSolution s = solve_p2(three_point(), 0.1);
  CHECK_FALSE(s.lambda.has_value());
  REQUIRE(s.q.size() == 3);
  CHECK(s.q[0] == doctest::Approx(0.31990833708227695).epsilon(1e-13));
  CHECK(s.q[1] == doctest::Approx(0.63981667416455390).epsilon(1e-13));
  CHECK(s.q[2] == doctest::Approx(0.040274988753169155).epsilon(1e-12));
  CHECK(s.mean == doctest::Approx(0.36018332583544610).epsilon(1e-13));
  CHECK(kl_divergence(three_point().weights(), s.q) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("solve_p2: root branch") {
  const DualSolution s = solve_p2(three_point(), 0.02);
  REQUIRE(s.lambda.has_value());
  CHECK(*s.lambda == doctest::Approx(1.5125206246941035).epsilon(1e-10));
  CHECK(s.q[0] == doctest::Approx(0.40099171644797).epsilon(1e-10));
  CHECK(s.q[2] == 0.0);
  CHECK(s.mean == doctest::Approx(0.29950414177601506).epsilon(1e-10));
  const double kl = kl_divergence(three_point().weights(), s.q);
  CHECK(kl <= 0.02 + 1e-12);
  CHECK(kl == doctest::Approx(0.02).epsilon(1e-6));
  CHECK(f_eval(three_point(), 1.75) < 0.02);
}

TEST_CASE("solve_p2: limits and degenerate input") {
  std::mt19937_64 rng(47);
  for (int n = 0; n < 50; ++n) {
    const auto dist = random_dist(rng, 2 + n % 4, n % 2 == 1);
    const DualSolution s = solve_p2(dist, 1e-8);
    CHECK(s.mean == doctest::Approx(dist.mean()).epsilon(1e-3));
  }
  const DualSolution one = solve_p2(EmpiricalDistribution({1.0}, {1.0}), 0.3);
  CHECK(one.degenerate);
  CHECK(one.mean == 1.0);
  const auto at = EmpiricalDistribution::from_observations({0.4, 0.4});
  CHECK(solve_p2(at, 1e-9).mean == doctest::Approx(0.4).epsilon(1e-6));
  CHECK_THROWS_AS(solve_p2(three_point(), 0.0), std::invalid_argument);
}

TEST_CASE("solve_p2: brackets hold and q is always feasible") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> ud(1e-3, 5.0);
  for (int n = 0; n < 1000; ++n) {
    const auto dist = random_dist(rng, 2 + n % 7, n % 3 == 0);
    const double delta = ud(rng);
    if (dist.pole() > dist.support().front()) {
      CHECK(f_eval(dist, dual_upper_bracket(dist, delta)) <= delta);
    }
    const DualSolution s = solve_p2(dist, delta);
    double total = 0.0;
    for (double q : s.q) {
      CHECK(q >= 0.0);
      total += q;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.mean >= dist.support().front());
    CHECK(s.mean <= 1.0);
    const double kl = kl_divergence(dist.weights(), s.q);
    CHECK(kl <= delta + 1e-6);
    // within ~1e-9 of the pole f is too steep for kl to resolve delta
    if (s.lambda && *s.lambda - dist.pole() > 1e-9) CHECK(std::abs(kl - delta) <= 1e-6);
  }
}

TEST_CASE("Bernoulli support reduces to kl-UCB") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ud(1e-3, 5.0);
  for (int n = 0; n < 1000; ++n) {
    const double p = up(rng);
    const double delta = ud(rng);
    const double dual = solve_p2(EmpiricalDistribution::bernoulli(p), delta).mean;
    CHECK(std::abs(dual - solve_klucb_reference(p, delta, 1e-12).value()) <= 1e-6);
  }
  const auto ones = EmpiricalDistribution::from_observations({1.0, 1.0});
  CHECK(klucb_general_index(ones, 100, 2, 0.0) == 1.0);
  const auto coin = EmpiricalDistribution::from_observations({0, 1, 1, 0, 1, 0, 0, 0, 1, 1});
  CHECK(klucb_general_index(coin, 100, 10, 0.0) ==
        doctest::Approx(0.88790876164586137).epsilon(1e-6));
}
