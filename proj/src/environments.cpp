#include "ucboost/environments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ucboost {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ArmSpec parse_arm_line(const std::string& line, int lineno) {
  std::istringstream in(line);
  std::string kind;
  in >> kind;
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("scenario line " + std::to_string(lineno) + ": " + why);
  };
  std::vector<double> params;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw fail("bad number '" + tok + "'");
    params.push_back(v);
  }
  try {
    if (kind == "bernoulli") {
      if (params.size() != 1) throw fail("expected `bernoulli <mu>`");
      return ArmSpec::bernoulli(params[0]);
    }
    if (kind == "beta") {
      if (params.size() != 2) throw fail("expected `beta <a> <b>`");
      return ArmSpec::beta(params[0], params[1]);
    }
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.rfind("scenario line", 0) == 0) throw;
    throw fail(what);
  }
  throw fail("unknown arm kind '" + kind + "'");
}

}  // namespace

ArmSpec ArmSpec::bernoulli(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("bernoulli mean " + fmt(mu) + " outside [0,1]");
  }
  ArmSpec s;
  s.kind = Kind::bernoulli;
  s.mu = mu;
  return s;
}

ArmSpec ArmSpec::beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("beta shapes must be positive, got " + fmt(a) + ", " + fmt(b));
  }
  ArmSpec s;
  s.kind = Kind::beta;
  s.a = a;
  s.b = b;
  return s;
}

double ArmSpec::mean() const { return kind == Kind::bernoulli ? mu : a / (a + b); }

std::string ArmSpec::describe() const {
  return kind == Kind::bernoulli ? "bernoulli " + fmt(mu) : "beta " + fmt(a) + " " + fmt(b);
}

double Scenario::best_mean() const {
  double best = 0.0;
  for (const auto& arm : arms) best = std::max(best, arm.mean());
  return best;
}

std::vector<double> Scenario::gaps() const {
  const double best = best_mean();
  std::vector<double> g;
  g.reserve(arms.size());
  for (const auto& arm : arms) g.push_back(best - arm.mean());
  return g;
}

void Scenario::validate() const {
  if (arms.size() < 2) {
    throw std::invalid_argument("scenario '" + name + "' needs at least 2 arms");
  }
}

Scenario preset(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  if (name == "bernoulli1") {
    for (int i = 1; i <= 9; ++i) s.arms.push_back(ArmSpec::bernoulli(i / 10.0));
  } else if (name == "bernoulli2") {
    for (double mu : {0.01, 0.01, 0.01, 0.02, 0.02, 0.02, 0.05, 0.05, 0.05, 0.1}) {
      s.arms.push_back(ArmSpec::bernoulli(mu));
    }
  } else if (name == "beta") {
    for (int i = 1; i <= 9; ++i) s.arms.push_back(ArmSpec::beta(i, 2.0));
  } else {
    throw std::invalid_argument("unknown scenario preset '" + std::string(name) +
                                "' (bernoulli1, bernoulli2, beta)");
  }
  return s;
}

Scenario parse_scenario(std::istream& in, std::string name) {
  Scenario s;
  s.name = std::move(name);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    s.arms.push_back(parse_arm_line(line, lineno));
  }
  if (s.arms.empty()) throw std::invalid_argument("scenario '" + s.name + "' has no arms");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  return parse_scenario(in, path);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t run, std::uint64_t arm) {
  return splitmix64(splitmix64(splitmix64(master) ^ run) ^ arm);
}

double sample(const ArmSpec& arm, RewardStream& rng) {
  if (arm.kind == ArmSpec::Kind::bernoulli) return rng.uniform() < arm.mu ? 1.0 : 0.0;
  const double x = rng.gamma(arm.a);
  const double y = rng.gamma(arm.b);
  const double s = x + y;
  if (!(s > 0.0)) return rng.uniform() < arm.mean() ? 1.0 : 0.0;
  return std::clamp(x / s, 0.0, 1.0);
}

}  // namespace ucboost
