#include "trustnet/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trustnet {

std::string to_string(BanditKind kind) {
  switch (kind) {
    case BanditKind::epsilon_greedy:
      return "epsilon_greedy";
    case BanditKind::epsilon_first:
      return "epsilon_first";
    case BanditKind::epsilon_decreasing:
      return "epsilon_decreasing";
  }
  return "?";
}

BanditKind parse_bandit_kind(const std::string& text) {
  if (text == "epsilon_greedy") return BanditKind::epsilon_greedy;
  if (text == "epsilon_first") return BanditKind::epsilon_first;
  if (text == "epsilon_decreasing") return BanditKind::epsilon_decreasing;
  throw std::invalid_argument("unknown exploration policy '" + text + "'");
}

double ExplorationPolicy::epsilon_at(std::uint64_t t) const {
  switch (kind) {
    case BanditKind::epsilon_greedy:
      return epsilon;
    case BanditKind::epsilon_first:
      return t <= horizon ? 1.0 : 0.0;
    case BanditKind::epsilon_decreasing:
      return t == 0 ? 1.0 : std::min(1.0, decay / static_cast<double>(t));
  }
  return 0.0;
}

void ExplorationPolicy::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("exploration epsilon must lie in [0, 1]");
  }
  if (!(decay >= 0.0) || !std::isfinite(decay)) {
    throw std::invalid_argument("exploration decay must be finite and non-negative");
  }
  if (!(width_floor > 0.0)) {
    throw std::invalid_argument("exploration width floor must be positive");
  }
}

ScheduledInvitations schedule_round(std::span<const InvitationOption> options,
                                    std::span<const double> widths, std::size_t budget,
                                    const ExplorationPolicy& policy, std::uint64_t t,
                                    bool recent_change, InviteRanking ranking, TieRule tie,
                                    Rng& rng) {
  if (widths.size() != options.size()) {
    throw std::invalid_argument("one width per option is required");
  }
  const double eps = policy.epsilon_at(t);
  std::size_t explore_slots = 0;
  for (std::size_t s = 0; s < budget; ++s) {
    if (eps >= 1.0 || (eps > 0.0 && rng.bernoulli(eps))) ++explore_slots;
  }
  std::size_t h = budget - explore_slots;
  if (recent_change && budget > 0) h = std::min(h, budget - 1);

  ScheduledInvitations out;
  out.exploit = select_invitations(options, h, ranking, tie, rng);

  std::vector<std::size_t> pool;
  std::vector<double> weight;
  for (std::size_t o = 0; o < options.size(); ++o) {
    const auto& opt = options[o];
    if (opt.leader_utility < 0.0 || !accept_invitation(opt.follower_utility)) continue;
    if (std::binary_search(out.exploit.begin(), out.exploit.end(), opt.neighbor)) continue;
    pool.push_back(opt.neighbor);
    weight.push_back(std::max(0.0, widths[o]) + policy.width_floor);
  }
  const std::size_t wanted = std::min(budget - out.exploit.size(), pool.size());
  for (std::size_t s = 0; s < wanted; ++s) {
    double total = 0.0;
    for (double x : weight) total += x;
    double target = rng.uniform() * total;
    std::size_t pick = 0;
    while (pick + 1 < pool.size() && target >= weight[pick]) {
      target -= weight[pick];
      ++pick;
    }
    out.explore.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(out.explore.begin(), out.explore.end());
  return out;
}

}  // namespace trustnet
