#pragma once

#include <cstdint>
#include <limits>

namespace ridpolar {

/// Counter-based generator: output k of stream s under seed is
/// splitmix64(key(seed, s) + k * golden_gamma). The same (seed, stream)
/// gives the same sequence on every platform, and streams can be handed to
/// independent trials without coordination.
///
/// The real-valued draws below avoid <random> distributions, whose output is
/// implementation-defined.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p);
  /// Standard normal by Box-Muller (cached pair).
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ridpolar
