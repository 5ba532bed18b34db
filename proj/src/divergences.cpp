#include "ucboost/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ucboost {

namespace {

// p log p with 0 log 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// log(2 / (e (1 + p)))
double tangent_offset(double p) { return std::log(2.0) - 1.0 - std::log1p(p); }

ExtendedReal lower_bound_divergence(double p, double q) {
  double tail = 0.0;
  if (p < 1.0) {
    if (q >= 1.0) return kInfinity;
    tail = (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return xlogx(p) + tail;
}

ExtendedReal tangent_divergence(double p, double q) {
  const double slope_term = 2.0 * q / (p + 1.0);
  const double shift = p > 0.0 ? p * std::log(p / (p + 1.0)) : 0.0;
  return slope_term + shift + tangent_offset(p);
}

ExtendedReal hellinger_divergence(double p, double q) {
  const double a = std::sqrt(p) - std::sqrt(q);
  const double b = std::sqrt(1.0 - p) - std::sqrt(1.0 - q);
  return a * a + b * b;
}

void require_positive_delta(double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("exploration bonus delta must be > 0");
  }
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kl: return "kl";
    case Family::sq: return "sq";
    case Family::bq: return "bq";
    case Family::h: return "h";
    case Family::lb: return "lb";
    case Family::t: return "t";
    case Family::step: return "step";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kl, Family::sq, Family::bq, Family::h, Family::lb, Family::t,
                   Family::step}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

DivergenceSpec DivergenceSpec::of(Family family) {
  if (family == Family::step) {
    throw std::invalid_argument("step divergence needs an index and eta");
  }
  return DivergenceSpec{family, 0, 0.0};
}

DivergenceSpec DivergenceSpec::step(int k, double eta) {
  if (k < 0) throw std::invalid_argument("step index must be >= 0");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("step eta must lie in (0,1)");
  return DivergenceSpec{Family::step, k, eta};
}

double DivergenceSpec::threshold() const {
  return step_threshold(step_index, std::log1p(-step_eta));
}

bool DivergenceSpec::is_strong() const {
  return family == Family::kl || family == Family::sq || family == Family::bq ||
         family == Family::h;
}

std::string DivergenceSpec::name() const {
  if (family != Family::step) return std::string(to_string(family));
  return "step(k=" + std::to_string(step_index) + ",eta=" + std::to_string(step_eta) + ")";
}

double step_threshold(long k, double log_one_minus_eta) {
  return -std::expm1(static_cast<double>(k) * log_one_minus_eta);
}

ExtendedReal kl_bernoulli(double p, double q) {
  double head = 0.0;
  if (p > 0.0) {
    if (q <= 0.0) return kInfinity;
    head = p * std::log(p / q);
  }
  double tail = 0.0;
  if (p < 1.0) {
    if (q >= 1.0) return kInfinity;
    tail = (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  // Rounding can leave a value a few ulps below zero when q is next to p.
  return std::max(0.0, head + tail);
}

ExtendedReal evaluate(const DivergenceSpec& d, UnitScalar p_in, UnitScalar q_in) {
  const double p = p_in;
  const double q = q_in;
  switch (d.family) {
    case Family::kl: return kl_bernoulli(p, q);
    case Family::sq: return 2.0 * (p - q) * (p - q);
    case Family::bq: {
      const double x2 = (p - q) * (p - q);
      return 2.0 * x2 + (4.0 / 9.0) * x2 * x2;
    }
    case Family::h: return hellinger_divergence(p, q);
    case Family::lb: return lower_bound_divergence(p, q);
    case Family::t: return tangent_divergence(p, q);
    case Family::step: {
      const double qk = d.threshold();
      return q > qk ? kl_bernoulli(p, qk) : 0.0;
    }
  }
  return kInfinity;
}

namespace closed_form {

double sq(double p, double delta) { return std::min(1.0, p + std::sqrt(delta / 2.0)); }

double bq(double p, double delta) {
  // x^2 = -9/4 + sqrt(81/16 + 9 delta / 4), rationalised to avoid cancellation.
  const double a = 2.25 * delta;
  const double x2 = a / (std::sqrt(81.0 / 16.0 + a) + 2.25);
  return std::min(1.0, p + std::sqrt(x2));
}

double h(double p, double delta) {
  const double root_p = std::sqrt(p);
  if (delta >= 2.0 - 2.0 * root_p) return 1.0;
  const double v = (1.0 - delta / 2.0) * root_p + std::sqrt((1.0 - p) * (delta - delta * delta / 4.0));
  return std::min(1.0, v * v);
}

double lb(double p, double delta) {
  const double q = 1.0 - (1.0 - p) * std::exp((xlogx(p) - delta) / (1.0 - p));
  // d_lb(p, 1) is infinite for p < 1, so the answer is never exactly 1.
  return q < 1.0 ? q : std::nextafter(1.0, 0.0);
}

double t(double p, double delta) {
  const double shift = p > 0.0 ? p * std::log(p / (p + 1.0)) : 0.0;
  return std::min(1.0, (p + 1.0) / 2.0 * (delta - shift - tangent_offset(p)));
}

}  // namespace closed_form

UnitScalar solve_p1_closed_form(const DivergenceSpec& d, UnitScalar p_in, double delta) {
  require_positive_delta(delta);
  const double p = p_in;
  if (d.family == Family::kl) {
    throw std::invalid_argument("kl has no closed-form P1 solution");
  }
  if (d.family == Family::step && d.threshold() < p) {
    throw std::invalid_argument("step threshold " + std::to_string(d.threshold()) +
                                " lies below p " + std::to_string(p));
  }
  if (p >= 1.0 || std::isinf(delta)) return 1.0;

  switch (d.family) {
    case Family::sq: return closed_form::sq(p, delta);
    case Family::bq: return closed_form::bq(p, delta);
    case Family::h: return closed_form::h(p, delta);
    case Family::lb: return closed_form::lb(p, delta);
    case Family::t: return closed_form::t(p, delta);
    case Family::step: {
      const double qk = d.threshold();
      return delta < kl_bernoulli(p, qk) ? qk : 1.0;
    }
    case Family::kl: break;
  }
  return 1.0;
}

}  // namespace ucboost
