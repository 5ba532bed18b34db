#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ucboost {

/// Reward distribution of one arm: Bernoulli(mu) or Beta(a, b).
struct ArmSpec {
  enum class Kind { bernoulli, beta };

  Kind kind = Kind::bernoulli;
  double mu = 0.0;  // Bernoulli
  double a = 1.0;   // Beta
  double b = 1.0;

  /// Throw std::invalid_argument on out-of-range parameters.
  static ArmSpec bernoulli(double mu);
  static ArmSpec beta(double a, double b);

  double mean() const;
  std::string describe() const;
};

struct Scenario {
  std::string name;
  std::vector<ArmSpec> arms;

  std::size_t arm_count() const { return arms.size(); }
  double best_mean() const;
  /// mu* - mu_a per arm
  std::vector<double> gaps() const;
  /// Throws std::invalid_argument with fewer than two arms.
  void validate() const;
};

/// bernoulli1, bernoulli2 or beta. Throws std::invalid_argument otherwise.
Scenario preset(std::string_view name);

/// One arm per line, `bernoulli <mu>` or `beta <a> <b>`; blank lines and `#`
/// comments are skipped. Errors name the offending line. The arm-count check
/// is left to Scenario::validate.
Scenario parse_scenario(std::istream& in, std::string name);
Scenario load_scenario(const std::string& path);

/// Seed for the stream of (master seed, run, arm); distinct triples give
/// unrelated streams.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t run, std::uint64_t arm);

/// Independently owned random source for one arm of one replication.
class RewardStream {
 public:
  explicit RewardStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

 private:
  std::mt19937_64 engine_;
};

/// One reward in [0,1].
double sample(const ArmSpec& arm, RewardStream& rng);

}  // namespace ucboost
