#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trustnet/rng.hpp"
#include "trustnet/round.hpp"

namespace trustnet {

enum class BanditKind { epsilon_greedy, epsilon_first, epsilon_decreasing };

std::string to_string(BanditKind kind);
BanditKind parse_bandit_kind(const std::string& text);

/// Splits an agent's invitation budget between exploiting its best-known
/// neighbors and exploring uncertain ones.
struct ExplorationPolicy {
  BanditKind kind = BanditKind::epsilon_decreasing;
  double epsilon = 0.1;          // epsilon_greedy
  std::uint64_t horizon = 100;   // epsilon_first: explore every slot while t <= horizon
  double decay = 5.0;            // epsilon_decreasing: min(1, decay / t)
  std::uint64_t recency_window = 10;
  double width_floor = 1e-6;

  /// Probability that one slot explores in round t (t counts from 1).
  double epsilon_at(std::uint64_t t) const;
  void validate() const;
};

struct ScheduledInvitations {
  std::vector<std::size_t> exploit;
  std::vector<std::size_t> explore;
};

/// Each of the `budget` slots explores independently with probability
/// epsilon_at(t); h is the number left for exploitation, reduced to at most
/// budget - 1 when `recent_change` is set. The exploit set is the best h
/// options by `ranking`; the explore set is drawn without replacement from the
/// remaining acceptable options with probability proportional to
/// `widths[o] + width_floor`.
ScheduledInvitations schedule_round(std::span<const InvitationOption> options,
                                    std::span<const double> widths, std::size_t budget,
                                    const ExplorationPolicy& policy, std::uint64_t t,
                                    bool recent_change, InviteRanking ranking, TieRule tie,
                                    Rng& rng);

}  // namespace trustnet
