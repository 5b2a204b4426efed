#include "trustnet/estimator.hpp"

#include <bit>
#include <mutex>
#include <stdexcept>

#include "trustnet/rng.hpp"

namespace trustnet {

namespace {

constexpr std::uint64_t kBankStream = 0x62616e6b;  // "bank"
constexpr std::size_t kMaxCacheEntries = std::size_t{1} << 20;

}  // namespace

ExpectedUtilities estimate_expected_utilities(const GameDistribution& dist, TrustLevel leader,
                                              TrustLevel follower, std::size_t samples,
                                              std::uint64_t seed) {
  if (samples == 0) {
    throw std::invalid_argument("estimate_expected_utilities requires at least one sample");
  }
  dist.validate();
  Rng rng(derive_seed(seed, {kBankStream}));
  BimatrixGame game(dist.rows, dist.cols);
  double leader_sum = 0.0;
  double follower_sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    dist.draw_into(game, rng);
    const LtseOutcome out = leader_ltse_strategy(game, leader, follower);
    leader_sum += out.leader_utility;
    follower_sum += out.follower_utility;
  }
  const double n = static_cast<double>(samples);
  return {leader_sum / n, follower_sum / n};
}

UtilityEstimator::UtilityEstimator(GameDistribution dist, std::size_t samples, std::uint64_t seed)
    : dist_(std::move(dist)) {
  if (samples == 0) {
    throw std::invalid_argument("utility estimator requires at least one sample");
  }
  dist_.validate();
  // Same stream as estimate_expected_utilities, so both agree for equal seeds.
  Rng rng(derive_seed(seed, {kBankStream}));
  bank_.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    bank_.push_back(dist_.draw(rng));
  }
}

std::size_t UtilityEstimator::KeyHash::operator()(const Key& k) const noexcept {
  const std::uint64_t a = std::bit_cast<std::uint64_t>(k.leader);
  const std::uint64_t b = std::bit_cast<std::uint64_t>(k.follower);
  return static_cast<std::size_t>(derive_seed(a, {b}));
}

ExpectedUtilities UtilityEstimator::compute(double leader_delta, double anticipated,
                                            double actual) const {
  const TrustLevel leader(leader_delta);
  const TrustLevel planned(anticipated);
  const TrustLevel real(actual);
  double leader_sum = 0.0;
  double follower_sum = 0.0;
  for (const auto& game : bank_) {
    const LtseOutcome out = play_ltse(game, leader, planned, real);
    leader_sum += out.leader_utility;
    follower_sum += out.follower_utility;
  }
  const double n = static_cast<double>(bank_.size());
  return {leader_sum / n, follower_sum / n};
}

ExpectedUtilities UtilityEstimator::expected(double leader_delta, double follower_delta) const {
  const Key key{leader_delta, follower_delta};
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      return it->second;
    }
  }
  const ExpectedUtilities value = compute(leader_delta, follower_delta, follower_delta);
  std::unique_lock lock(mutex_);
  if (cache_.size() >= kMaxCacheEntries) {
    cache_.clear();
  }
  cache_.emplace(key, value);
  return value;
}

ExpectedUtilities UtilityEstimator::expected_mismatched(double leader_delta,
                                                        double anticipated_follower,
                                                        double actual_follower) const {
  return compute(leader_delta, anticipated_follower, actual_follower);
}

std::size_t UtilityEstimator::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace trustnet
