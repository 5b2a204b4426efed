#include "trustnet/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "trustnet/learning.hpp"
#include "trustnet/pareto.hpp"
#include "trustnet/rng.hpp"

namespace trustnet {

namespace {

constexpr std::uint64_t kDiscoveryStream = 0x64697363;  // "disc"
constexpr std::uint64_t kTimeStream = 0x74696d65;       // "time"

}  // namespace

DiscoveryProbabilities estimate_discovery_probabilities(const GameDistribution& dist,
                                                        TrustLevel delta2, double epsilon,
                                                        std::size_t trials, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  if (dist.rows != 1) throw std::invalid_argument("discovery probabilities use 1 x n games");
  dist.validate();

  Rng rng(derive_seed(seed, {kDiscoveryStream}));
  BimatrixGame game(dist.rows, dist.cols);
  std::size_t lower = 0, upper = 0, both = 0;
  const double d = delta2.value();
  for (std::size_t t = 0; t < trials; ++t) {
    dist.draw_into(game, rng);
    const std::size_t col = follower_ltse_response(game, 0, delta2);
    const auto frontier = follower_frontier(game, 0);
    const BoundUpdate seen = leader_update_bounds({}, frontier, col);
    // A greedy answer only shows l = 0, which counts solely when delta2 is 0.
    const bool lo = (seen.interval.lower > 0.0 || d == 0.0) && d - seen.interval.lower <= epsilon;
    const bool hi = std::isfinite(seen.interval.upper) && seen.interval.upper - d <= epsilon;
    lower += lo;
    upper += hi;
    both += lo && hi;
  }
  const double n = static_cast<double>(trials);
  DiscoveryProbabilities p;
  p.trials = trials;
  p.p_lower = static_cast<double>(lower) / n;
  p.p_upper = static_cast<double>(upper) / n;
  p.p_both = static_cast<double>(both) / n;
  p.se_lower = std::sqrt(p.p_lower * (1.0 - p.p_lower) / n);
  p.se_upper = std::sqrt(p.p_upper * (1.0 - p.p_upper) / n);
  p.se_both = std::sqrt(p.p_both * (1.0 - p.p_both) / n);
  // Both-indicator is the product of the other two.
  p.cov_lower_upper = p.p_both - p.p_lower * p.p_upper;
  p.cov_lower_both = p.p_both - p.p_lower * p.p_both;
  p.cov_upper_both = p.p_both - p.p_upper * p.p_both;
  return p;
}

TimeBound discovery_time_bound(const DiscoveryProbabilities& p) {
  TimeBound out;
  const double pl = p.p_lower, pu = p.p_upper, q = p.p_both;
  if (!(pl > 0.0) || !(pu > 0.0)) {
    out.t_bound = std::numeric_limits<double>::infinity();
    out.se = std::numeric_limits<double>::infinity();
    return out;
  }
  const double s = pu + pl - q;
  const double a = 1.0 + (pu - q) / pl + (pl - q) / pu;
  out.t_bound = a / s;
  out.bounded = true;

  const double g_l = ((-(pu - q) / (pl * pl) + 1.0 / pu) * s - a) / (s * s);
  const double g_u = ((1.0 / pl - (pl - q) / (pu * pu)) * s - a) / (s * s);
  const double g_q = ((-1.0 / pl - 1.0 / pu) * s + a) / (s * s);
  if (p.trials > 0) {
    const double n = static_cast<double>(p.trials);
    const double var_l = p.se_lower * p.se_lower * n;
    const double var_u = p.se_upper * p.se_upper * n;
    const double var_q = p.se_both * p.se_both * n;
    const double var = g_l * g_l * var_l + g_u * g_u * var_u + g_q * g_q * var_q +
                       2.0 * g_l * g_u * p.cov_lower_upper + 2.0 * g_l * g_q * p.cov_lower_both +
                       2.0 * g_u * g_q * p.cov_upper_both;
    out.se = std::sqrt(std::max(0.0, var) / n);
  }
  return out;
}

std::string to_string(RowPolicy policy) {
  return policy == RowPolicy::random_row ? "random_row" : "informed_row";
}

RowPolicy parse_row_policy(const std::string& text) {
  if (text == "random_row") return RowPolicy::random_row;
  if (text == "informed_row") return RowPolicy::informed_row;
  throw std::invalid_argument("unknown row policy '" + text + "'");
}

DiscoveryTime measure_discovery_time(const GameDistribution& dist, TrustLevel delta2,
                                     double epsilon, RowPolicy policy, std::size_t trials,
                                     std::uint64_t seed, double delta_max,
                                     std::uint64_t max_rounds) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  dist.validate();

  DiscoveryTime out;
  out.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t finished = 0;
  BimatrixGame game(dist.rows, dist.cols);
  std::vector<std::size_t> useful;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {kTimeStream, t}));
    BoundInterval interval;
    std::uint64_t rounds = 0;
    while (interval.width(delta_max) > 2.0 * epsilon && rounds < max_rounds) {
      ++rounds;
      dist.draw_into(game, rng);
      std::size_t row = 0;
      if (policy == RowPolicy::informed_row) {
        useful.clear();
        for (std::size_t r = 0; r < game.rows(); ++r) {
          const auto frontier = follower_frontier(game, r);
          for (std::size_t p = 1; p < frontier.size(); ++p) {
            const double cut = frontier.front().primary - frontier[p].primary;
            if (interval.lower < cut && cut < interval.upper) {
              useful.push_back(r);
              break;
            }
          }
        }
        row = useful.empty() ? static_cast<std::size_t>(rng.below(game.rows()))
                             : useful[static_cast<std::size_t>(rng.below(useful.size()))];
      } else {
        row = static_cast<std::size_t>(rng.below(game.rows()));
      }
      const std::size_t col = follower_ltse_response(game, row, delta2);
      interval = leader_update_bounds(interval, follower_frontier(game, row), col).interval;
    }
    if (interval.width(delta_max) > 2.0 * epsilon) {
      ++out.censored;
      continue;
    }
    ++finished;
    sum += static_cast<double>(rounds);
    sum_sq += static_cast<double>(rounds) * static_cast<double>(rounds);
  }
  if (finished > 0) {
    const double n = static_cast<double>(finished);
    out.mean = sum / n;
    const double var = finished > 1 ? (sum_sq - n * out.mean * out.mean) / (n - 1.0) : 0.0;
    out.se = std::sqrt(std::max(0.0, var) / n);
  }
  return out;
}

}  // namespace trustnet
