#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "trustnet/distribution.hpp"
#include "trustnet/game.hpp"

namespace trustnet {

/// How often one game pins a follower's trust to within epsilon from below,
/// from above, or both at once, with binomial standard errors. The cov_*
/// fields are covariances of the per-game indicator variables.
struct DiscoveryProbabilities {
  double p_lower = 0.0;
  double p_upper = 0.0;
  double p_both = 0.0;
  double se_lower = 0.0;
  double se_upper = 0.0;
  double se_both = 0.0;
  double cov_lower_upper = 0.0;
  double cov_lower_both = 0.0;
  double cov_upper_both = 0.0;
  std::size_t trials = 0;

  /// Probability that a game reveals at least one bound.
  double p_any() const { return p_lower + p_upper - p_both; }
};

/// Classifies `trials` random 1 x n games. The follower answers at `delta2`;
/// the revealed interval [l, u) counts as a lower discovery when l > 0 (or
/// delta2 = 0) and delta2 - l <= epsilon, and as an upper discovery when u is finite and
/// u - delta2 <= epsilon. Throws std::invalid_argument unless epsilon > 0,
/// trials > 0 and the distribution has one row.
DiscoveryProbabilities estimate_discovery_probabilities(const GameDistribution& dist,
                                                        TrustLevel delta2, double epsilon,
                                                        std::size_t trials, std::uint64_t seed);

struct TimeBound {
  double t_bound = 0.0;  // +inf when a discovery probability is zero
  double se = 0.0;       // delta-method standard error of the plug-in value
  bool bounded = false;
};

/// Upper bound on the expected number of games a leader choosing rows at
/// random needs to pin the follower's trust within epsilon on both sides:
/// T = (1 + (Pu - Q) / Pl + (Pl - Q) / Pu) / (Pu + Pl - Q).
TimeBound discovery_time_bound(const DiscoveryProbabilities& p);

enum class RowPolicy { random_row, informed_row };

std::string to_string(RowPolicy policy);
RowPolicy parse_row_policy(const std::string& text);

struct DiscoveryTime {
  double mean = 0.0;  // over uncensored trials
  double se = 0.0;
  std::size_t trials = 0;
  std::size_t censored = 0;
};

/// Repeats fresh games with bound updates until the interval width (upper
/// clamped to delta_max) is at most 2 * epsilon, starting from [0, delta_max).
/// `informed_row` only plays rows whose follower frontier has a breakpoint
/// strictly inside the current interval, falling back to a random row.
/// Trials that reach `max_rounds` are censored.
DiscoveryTime measure_discovery_time(const GameDistribution& dist, TrustLevel delta2,
                                     double epsilon, RowPolicy policy, std::size_t trials,
                                     std::uint64_t seed, double delta_max = 30.0,
                                     std::uint64_t max_rounds = 1'000'000);

}  // namespace trustnet
