#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trustnet/distribution.hpp"
#include "trustnet/estimator.hpp"
#include "trustnet/game.hpp"
#include "trustnet/network.hpp"
#include "trustnet/rng.hpp"

namespace trustnet {

/// How equally ranked invitation candidates are resolved.
enum class TieRule { uniform_random, lexicographic };

/// What a leader ranks its candidate followers by.
///
/// `trust` orders by the (believed) trust level of the neighbor, the
/// behavioural assumption of the model for a shared game distribution: a
/// more trusting follower is always preferred and equal trust is a tie.
/// `estimate` orders by the Monte Carlo estimate of the leader's utility.
enum class InviteRanking { trust, estimate };

std::string to_string(TieRule rule);
std::string to_string(InviteRanking ranking);
TieRule parse_tie_rule(const std::string& text);
InviteRanking parse_invite_ranking(const std::string& text);

/// One neighbor as seen by a prospective leader.
struct InvitationOption {
  std::size_t neighbor = 0;
  double trust = 0.0;             // believed trust level of the neighbor
  double leader_utility = 0.0;    // estimated u_i
  double follower_utility = 0.0;  // estimated u_j
};

/// Up to `budget` neighbors with the highest ranking key among options whose
/// estimated utilities are both non-negative. Ties at the cut are resolved by
/// `tie` (lexicographic: lower neighbor index wins). The result is sorted.
std::vector<std::size_t> select_invitations(std::span<const InvitationOption> options,
                                            std::size_t budget, InviteRanking ranking, TieRule tie,
                                            Rng& rng);

/// True iff the invitee expects a non-negative payoff.
inline bool accept_invitation(double expected_follower_utility) {
  return expected_follower_utility >= 0.0;
}

struct AgentState {
  double delta = 0.0;
  std::size_t budget = 0;  // k_i after clamping to the degree
  double accumulated_utility = 0.0;
  /// Per-neighbor overrides of `delta`; empty unless trust is personalized.
  std::map<std::size_t, double> toward;

  double delta_for(std::size_t other) const {
    auto it = toward.find(other);
    return it == toward.end() ? delta : it->second;
  }
};

/// k_i = min(k, |N_i|).
std::size_t clamp_budget(std::size_t k, std::size_t degree);

/// Agents with trust 0 and budget min(k, degree).
std::vector<AgentState> make_agents(const SocialNetwork& network, std::size_t k);

/// An accepted invitation: `leader` plays one game with `follower`, planning
/// against `anticipated_follower_delta`.
struct Invitation {
  std::size_t leader = 0;
  std::size_t follower = 0;
  double anticipated_follower_delta = 0.0;
  bool explore = false;
};

struct PlayedGame {
  Invitation invitation;
  BimatrixGame game;
  LtseOutcome outcome;
};

/// Ledger of one round.
struct RoundRecord {
  std::uint64_t round = 0;
  std::vector<std::vector<std::size_t>> invites;     // K1: accepted invitations issued
  std::vector<std::vector<std::size_t>> invited_by;  // K2: accepted invitations received
  std::vector<PlayedGame> games;
  std::vector<double> v;  // utility from games led
  std::vector<double> w;  // utility from games followed

  double utility(std::size_t agent) const { return v[agent] + w[agent]; }
  double total_utility() const;
};

/// Draws one fresh game per invitation (each pair has its own substream of
/// `seed` and `round`) and plays it at the agents' true trust levels, with the
/// leader planning against the anticipated follower trust.
RoundRecord realize_round(std::span<const AgentState> agents,
                          std::span<const Invitation> invitations, const GameDistribution& dist,
                          std::uint64_t round, std::uint64_t seed, std::size_t workers = 1);

struct RoundSettings {
  TieRule tie = TieRule::uniform_random;
  InviteRanking ranking = InviteRanking::trust;
};

/// Invitations of one round when every agent knows every trust level.
/// Uniform tie draws consume the round's stream in agent order.
std::vector<Invitation> plan_known_invitations(const SocialNetwork& network,
                                               std::span<const AgentState> agents,
                                               const UtilityEstimator& estimator,
                                               RoundSettings settings, std::uint64_t round,
                                               std::uint64_t seed);

/// One full round with known trust levels.
RoundRecord play_round(const SocialNetwork& network, std::span<const AgentState> agents,
                       const UtilityEstimator& estimator, RoundSettings settings,
                       std::uint64_t round, std::uint64_t seed, std::size_t workers = 1);

/// Expected number of games `agent` follows per round when all agents share
/// one trust level and ties are uniform: sum over neighbors j of k_j / |N_j|.
double expected_following_count(const SocialNetwork& network, std::size_t agent,
                                std::span<const std::size_t> budgets);

/// Stream tags shared by the round engine and the dynamics driver.
namespace stream {
inline constexpr std::uint64_t ties = 0x74696573;     // "ties"
inline constexpr std::uint64_t games = 0x67616d65;    // "game"
inline constexpr std::uint64_t explore = 0x65787072;  // "expr"
inline constexpr std::uint64_t update = 0x75706474;   // "updt"
}  // namespace stream

}  // namespace trustnet
