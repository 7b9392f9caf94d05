#ifndef ABC_RANDOM_HPP
#define ABC_RANDOM_HPP

#include <cstdint>

namespace abc {

/// One independent random stream. Every proposal owns its own stream,
/// derived from (seed, generation, proposal counter), so results do not
/// depend on how proposals are scheduled across workers.
///
/// Core generator: xoshiro256** seeded through a splitmix64 chain.
class RandomStream {
 public:
  RandomStream() : RandomStream(0) {}
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform double in [lo, hi); returns lo when the interval collapses.
  double uniform(double lo, double hi);

  /// Standard normal draw (Box-Muller; consumes two uniforms per call).
  double normal();

  double normal(double mean, double sd);

 private:
  std::uint64_t state_[4];
};

/// Avalanche mixer used for stream derivation (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Derive the stream owned by one proposal. All randomness in a run is a
/// pure function of these three values, which makes populations identical
/// across worker counts.
RandomStream derive_stream(std::uint64_t seed, std::uint64_t generation,
                           std::uint64_t counter);

}  // namespace abc

#endif  // ABC_RANDOM_HPP
