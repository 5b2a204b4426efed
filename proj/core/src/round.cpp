#include "trustnet/round.hpp"

#include <algorithm>
#include <stdexcept>

#include "trustnet/parallel.hpp"

namespace trustnet {

std::string to_string(TieRule rule) {
  return rule == TieRule::uniform_random ? "uniform_random" : "lexicographic";
}

std::string to_string(InviteRanking ranking) {
  return ranking == InviteRanking::trust ? "trust" : "estimate";
}

TieRule parse_tie_rule(const std::string& text) {
  if (text == "uniform_random") return TieRule::uniform_random;
  if (text == "lexicographic") return TieRule::lexicographic;
  throw std::invalid_argument("unknown tie rule '" + text + "'");
}

InviteRanking parse_invite_ranking(const std::string& text) {
  if (text == "trust") return InviteRanking::trust;
  if (text == "estimate") return InviteRanking::estimate;
  throw std::invalid_argument("unknown invitation ranking '" + text + "'");
}

std::vector<std::size_t> select_invitations(std::span<const InvitationOption> options,
                                            std::size_t budget, InviteRanking ranking, TieRule tie,
                                            Rng& rng) {
  struct Ranked {
    double key;
    std::size_t neighbor;
  };
  std::vector<Ranked> pool;
  pool.reserve(options.size());
  for (const auto& o : options) {
    if (o.leader_utility >= 0.0 && accept_invitation(o.follower_utility)) {
      pool.push_back({ranking == InviteRanking::trust ? o.trust : o.leader_utility, o.neighbor});
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Ranked& x, const Ranked& y) {
    return x.key != y.key ? x.key > y.key : x.neighbor < y.neighbor;
  });
  std::vector<std::size_t> chosen;
  if (pool.size() <= budget) {
    for (const auto& r : pool) chosen.push_back(r.neighbor);
  } else if (budget > 0) {
    const double cut = pool[budget - 1].key;
    std::size_t first = budget - 1;
    while (first > 0 && pool[first - 1].key == cut) --first;
    std::size_t last = budget;
    while (last < pool.size() && pool[last].key == cut) ++last;
    for (std::size_t p = 0; p < first; ++p) chosen.push_back(pool[p].neighbor);
    const std::size_t slots = budget - first;
    if (tie == TieRule::uniform_random && last - first > slots) {
      // Partial Fisher-Yates over the tied block.
      for (std::size_t s = 0; s < slots; ++s) {
        const std::size_t pick = first + s + static_cast<std::size_t>(rng.below(last - first - s));
        std::swap(pool[first + s], pool[pick]);
      }
    }
    for (std::size_t s = 0; s < slots; ++s) chosen.push_back(pool[first + s].neighbor);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::size_t clamp_budget(std::size_t k, std::size_t degree) { return std::min(k, degree); }

std::vector<AgentState> make_agents(const SocialNetwork& network, std::size_t k) {
  std::vector<AgentState> agents(network.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    agents[i].budget = clamp_budget(k, network.degree(i));
  }
  return agents;
}

double RoundRecord::total_utility() const {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += v[i] + w[i];
  return total;
}

RoundRecord realize_round(std::span<const AgentState> agents,
                          std::span<const Invitation> invitations, const GameDistribution& dist,
                          std::uint64_t round, std::uint64_t seed, std::size_t workers) {
  const std::size_t n = agents.size();
  RoundRecord record;
  record.round = round;
  record.invites.assign(n, {});
  record.invited_by.assign(n, {});
  record.v.assign(n, 0.0);
  record.w.assign(n, 0.0);
  record.games.resize(invitations.size());
  parallel_for(invitations.size(), workers, [&](std::size_t g) {
    const Invitation& inv = invitations[g];
    if (inv.leader >= n || inv.follower >= n || inv.leader == inv.follower) {
      throw std::out_of_range("invitation refers to an invalid agent pair");
    }
    Rng rng(derive_seed(seed, {stream::games, round, inv.leader, inv.follower}));
    PlayedGame& played = record.games[g];
    played.invitation = inv;
    played.game = dist.draw(rng);
    played.outcome = play_ltse(played.game, TrustLevel(agents[inv.leader].delta_for(inv.follower)),
                               TrustLevel(inv.anticipated_follower_delta),
                               TrustLevel(agents[inv.follower].delta_for(inv.leader)));
  });
  for (const PlayedGame& played : record.games) {
    const Invitation& inv = played.invitation;
    record.invites[inv.leader].push_back(inv.follower);
    record.invited_by[inv.follower].push_back(inv.leader);
    record.v[inv.leader] += played.outcome.leader_utility;
    record.w[inv.follower] += played.outcome.follower_utility;
  }
  for (auto& list : record.invites) std::sort(list.begin(), list.end());
  for (auto& list : record.invited_by) std::sort(list.begin(), list.end());
  return record;
}

std::vector<Invitation> plan_known_invitations(const SocialNetwork& network,
                                               std::span<const AgentState> agents,
                                               const UtilityEstimator& estimator,
                                               RoundSettings settings, std::uint64_t round,
                                               std::uint64_t seed) {
  if (agents.size() != network.size()) {
    throw std::invalid_argument("agent count does not match the network");
  }
  Rng ties(derive_seed(seed, {stream::ties, round}));
  std::vector<Invitation> out;
  std::vector<InvitationOption> options;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    options.clear();
    for (std::size_t j : network.neighbors(i)) {
      const double mine = agents[i].delta_for(j);
      const double theirs = agents[j].delta_for(i);
      const ExpectedUtilities e = estimator.expected(mine, theirs);
      options.push_back({j, theirs, e.leader, e.follower});
    }
    for (std::size_t j :
         select_invitations(options, agents[i].budget, settings.ranking, settings.tie, ties)) {
      out.push_back({i, j, agents[j].delta_for(i), false});
    }
  }
  return out;
}

RoundRecord play_round(const SocialNetwork& network, std::span<const AgentState> agents,
                       const UtilityEstimator& estimator, RoundSettings settings,
                       std::uint64_t round, std::uint64_t seed, std::size_t workers) {
  const auto invitations =
      plan_known_invitations(network, agents, estimator, settings, round, seed);
  return realize_round(agents, invitations, estimator.distribution(), round, seed, workers);
}

double expected_following_count(const SocialNetwork& network, std::size_t agent,
                                std::span<const std::size_t> budgets) {
  if (budgets.size() != network.size()) {
    throw std::invalid_argument("one budget per agent is required");
  }
  double total = 0.0;
  for (std::size_t j : network.neighbors(agent)) {
    const double deg = static_cast<double>(network.degree(j));
    total += static_cast<double>(clamp_budget(budgets[j], network.degree(j))) / deg;
  }
  return total;
}

}  // namespace trustnet
