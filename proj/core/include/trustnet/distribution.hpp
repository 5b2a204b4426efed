#pragma once

#include <cstddef>
#include <string>

#include "trustnet/game.hpp"
#include "trustnet/rng.hpp"

namespace trustnet {

enum class EntryLaw { exponential, uniform };

/// Generator of random games whose payoff entries are all i.i.d.
///
/// The exponential law is parameterized by its mean (scale), not its rate.
struct GameDistribution {
  std::size_t rows = 2;
  std::size_t cols = 2;
  EntryLaw law = EntryLaw::exponential;
  double mean = 1.0;  // exponential only
  double lo = 0.0;    // uniform only
  double hi = 1.0;    // uniform only

  static GameDistribution exponential(double mean, std::size_t rows = 2, std::size_t cols = 2);
  static GameDistribution uniform(double lo, double hi, std::size_t rows = 2, std::size_t cols = 2);

  /// Throws std::invalid_argument on a non-positive mean, lo > hi, or an empty shape.
  void validate() const;

  /// Smallest entry the law can produce; used to decide whether every
  /// interaction is guaranteed to be acceptable.
  double support_min() const;

  BimatrixGame draw(Rng& rng) const;
  void draw_into(BimatrixGame& game, Rng& rng) const;

  std::string describe() const;

  friend bool operator==(const GameDistribution&, const GameDistribution&) = default;

 private:
  double draw_entry(Rng& rng) const;
};

}  // namespace trustnet
