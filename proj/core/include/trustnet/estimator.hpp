#pragma once

#include <cstddef>
#include <cstdint>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "trustnet/distribution.hpp"
#include "trustnet/game.hpp"

namespace trustnet {

/// Expected leader and follower utility of one invitation.
struct ExpectedUtilities {
  double leader = 0.0;
  double follower = 0.0;
};

/// Sample means of LTSE payoffs over `samples` fresh games. Deterministic in `seed`.
ExpectedUtilities estimate_expected_utilities(const GameDistribution& dist, TrustLevel leader,
                                              TrustLevel follower, std::size_t samples,
                                              std::uint64_t seed);

/// Monte Carlo estimate of u_leader(delta_l, delta_f) and u_follower(delta_l, delta_f)
/// for games drawn from one distribution.
///
/// All queries are answered from one fixed bank of sampled games (common
/// random numbers). Two followers with the same trust level therefore receive
/// bit-identical estimates and tie exactly, and per-game monotonicity in
/// either trust level carries over to the estimates. Results are memoized by
/// the exact pair of trust values; the object is safe to query concurrently.
class UtilityEstimator {
 public:
  UtilityEstimator(GameDistribution dist, std::size_t samples, std::uint64_t seed);

  UtilityEstimator(const UtilityEstimator&) = delete;
  UtilityEstimator& operator=(const UtilityEstimator&) = delete;

  ExpectedUtilities expected(double leader_delta, double follower_delta) const;

  /// Leader utility when the leader plans against `anticipated_follower` while
  /// the follower actually answers at `actual_follower`. Not memoized.
  ExpectedUtilities expected_mismatched(double leader_delta, double anticipated_follower,
                                        double actual_follower) const;

  const GameDistribution& distribution() const { return dist_; }
  std::size_t samples() const { return bank_.size(); }
  std::size_t cache_size() const;

 private:
  struct Key {
    double leader;
    double follower;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  ExpectedUtilities compute(double leader_delta, double anticipated, double actual) const;

  GameDistribution dist_;
  std::vector<BimatrixGame> bank_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, ExpectedUtilities, KeyHash> cache_;
};

}  // namespace trustnet
