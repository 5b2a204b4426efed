#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace trustnet {

/// Mixes a seed with a list of stream tags into an independent 64-bit seed.
/// Used to give every (experiment, round, pair, ...) its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

/// Seeded 64-bit Mersenne Twister with platform-independent real draws.
///
/// std::mt19937_64 itself is fully specified by the standard; the distribution
/// helpers below avoid the implementation-defined std:: distributions so that
/// identical seeds give bit-identical results across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with the given mean (scale), by inversion.
  double exponential(double mean);

  /// Uniform integer on [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  Rng substream(std::initializer_list<std::uint64_t> tags) { return Rng(derive_seed(next(), tags)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace trustnet
