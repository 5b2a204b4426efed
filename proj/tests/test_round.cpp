#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "trustnet/estimator.hpp"
#include "trustnet/network.hpp"
#include "trustnet/round.hpp"

using namespace trustnet;

namespace {

std::vector<InvitationOption> equal_options(const SocialNetwork& net, std::size_t agent) {
  std::vector<InvitationOption> options;
  for (std::size_t j : net.neighbors(agent)) options.push_back({j, 0.0, 1.0, 1.0});
  return options;
}

}  // namespace

TEST_CASE("estimator examples") {
  const auto dist = GameDistribution::exponential(2.0);
  const auto one = estimate_expected_utilities(dist, TrustLevel(0.5), TrustLevel(1.0), 1, 3);
  Rng rng(derive_seed(3, {0x62616e6b}));
  const auto g = dist.draw(rng);
  const auto out = leader_ltse_strategy(g, TrustLevel(0.5), TrustLevel(1.0));
  CHECK(one.leader == out.leader_utility);
  CHECK(one.follower == out.follower_utility);

  const auto constant = GameDistribution::uniform(1.5, 1.5);
  const UtilityEstimator est(constant, 100, 1);
  for (double a : {0.0, 1.0, 7.0}) {
    for (double b : {0.0, 2.0}) {
      CHECK(est.expected(a, b).leader == 1.5);
      CHECK(est.expected(a, b).follower == 1.5);
    }
  }
  CHECK_THROWS(UtilityEstimator(dist, 0, 1));
}

TEST_CASE("zero-trust per-game value matches an independent Monte Carlo oracle") {
  const auto dist = GameDistribution::exponential(2.0);
  const auto est = estimate_expected_utilities(dist, TrustLevel(0), TrustLevel(0), 200000, 4);
  Rng rng(99);
  double total = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto g = dist.draw(rng);
    const auto s = oracle::stackelberg(g);
    total += g.leader(s.row, s.col) + g.follower(s.row, s.col);
  }
  const double oracle_mean = total / n;
  CHECK(est.leader + est.follower == doctest::Approx(oracle_mean).epsilon(0.02));
  CHECK(est.leader + est.follower == doctest::Approx(12.012 / 2.0).epsilon(0.02));
}

TEST_CASE("estimator is shared, deterministic and thread-safe") {
  const auto dist = GameDistribution::exponential(2.0);
  const UtilityEstimator a(dist, 500, 21);
  const UtilityEstimator b(dist, 500, 21);
  CHECK(a.expected(1.0, 2.0).leader == b.expected(1.0, 2.0).leader);
  CHECK(a.expected(1.0, 2.0).leader ==
        estimate_expected_utilities(dist, TrustLevel(1), TrustLevel(2), 500, 21).leader);
  CHECK(a.expected_mismatched(1.0, 2.0, 2.0).leader == a.expected(1.0, 2.0).leader);
  CHECK(a.cache_size() >= 1);
}

TEST_CASE("leader utility is non-increasing in its own trust with common random numbers") {
  const UtilityEstimator est(GameDistribution::exponential(2.0), 2000, 5);
  for (double df : {0.0, 1.0, 3.0}) {
    double last = est.expected(0.0, df).leader;
    for (double dl = 0.5; dl <= 10.0; dl += 0.5) {
      const double cur = est.expected(dl, df).leader;
      CHECK(cur <= last);
      last = cur;
    }
  }
}

TEST_CASE("leader estimate ordering follows follower trust ordering") {
  const UtilityEstimator est(GameDistribution::exponential(2.0), 2000, 6);
  for (double dl : {0.0, 2.0}) {
    double last = est.expected(dl, 0.0).leader;
    for (double df = 0.5; df <= 30.0; df += 0.5) {
      const double cur = est.expected(dl, df).leader;
      CHECK(cur >= last);
      last = cur;
    }
  }
}

TEST_CASE("acceptance rule") {
  CHECK(accept_invitation(0.0));
  CHECK_FALSE(accept_invitation(-0.01));
  CHECK(accept_invitation(3.0));
}

TEST_CASE("invitation selection on the example network") {
  const auto net = example7_network();
  const auto options = equal_options(net, 6);
  Rng rng(1);
  const auto lex =
      select_invitations(options, 2, InviteRanking::trust, TieRule::lexicographic, rng);
  CHECK(lex == std::vector<std::size_t>{0, 2});
  std::set<std::vector<std::size_t>> seen;
  for (int i = 0; i < 500; ++i) {
    const auto pick =
        select_invitations(options, 2, InviteRanking::trust, TieRule::uniform_random, rng);
    REQUIRE(pick.size() == 2);
    REQUIRE(std::is_sorted(pick.begin(), pick.end()));
    for (std::size_t j : pick) REQUIRE(net.has_edge(6, j));
    seen.insert(pick);
  }
  CHECK(seen.size() == 6);
  const auto all =
      select_invitations(options, 10, InviteRanking::trust, TieRule::uniform_random, rng);
  CHECK(all.size() == 4);
}

TEST_CASE("selection ranks by trust or estimate and drops negative options") {
  Rng rng(2);
  std::vector<InvitationOption> options{
      {0, 1.0, 5.0, 1.0}, {1, 3.0, 2.0, 1.0}, {2, 2.0, 9.0, -1.0}, {3, 0.5, 7.0, 0.0}};
  CHECK(select_invitations(options, 2, InviteRanking::trust, TieRule::lexicographic, rng) ==
        std::vector<std::size_t>{0, 1});
  CHECK(select_invitations(options, 2, InviteRanking::estimate, TieRule::lexicographic, rng) ==
        std::vector<std::size_t>{0, 3});
}

TEST_CASE("expected following count") {
  const auto net = example7_network();
  std::vector<std::size_t> budgets(net.size(), 2);
  CHECK(expected_following_count(net, 6, budgets) == doctest::Approx(17.0 / 6.0));
  const auto exact = oracle::following_count(net, 6, budgets);
  CHECK(exact.num == 17);
  CHECK(exact.den == 6);
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto f = oracle::following_count(net, v, budgets);
    CHECK(expected_following_count(net, v, budgets) ==
          doctest::Approx(static_cast<double>(f.num) / static_cast<double>(f.den)));
  }
  const SocialNetwork isolated(3, {{0, 1}});
  CHECK(expected_following_count(isolated, 2, std::vector<std::size_t>(3, 2)) == 0.0);
  const auto star = star_network(5);
  CHECK(expected_following_count(star, 0, std::vector<std::size_t>(6, 1)) == 5.0);
}

TEST_CASE("budgets are clamped to the degree") {
  CHECK(clamp_budget(2, 1) == 1);
  CHECK(clamp_budget(2, 5) == 2);
  const auto agents = make_agents(karate_club_network(), 2);
  for (const auto& a : agents) CHECK(a.budget <= 2);
  CHECK(agents[karate_club_network().index_of(12)].budget == 1);
}

TEST_CASE("round ledger invariants") {
  const auto net = karate_club_network();
  const UtilityEstimator est(GameDistribution::exponential(4.0), 200, 3);
  auto agents = make_agents(net, 2);
  Rng rng(4);
  for (auto& a : agents) a.delta = static_cast<double>(rng.below(4));
  for (auto tie : {TieRule::uniform_random, TieRule::lexicographic}) {
    for (std::uint64_t t = 1; t <= 20; ++t) {
      const auto rec = play_round(net, agents, est, {tie, InviteRanking::trust}, t, 17);
      double sum_payoffs = 0.0;
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& g : rec.games) {
        sum_payoffs += g.outcome.leader_utility + g.outcome.follower_utility;
        REQUIRE(pairs.insert({g.invitation.leader, g.invitation.follower}).second);
        REQUIRE(net.has_edge(g.invitation.leader, g.invitation.follower));
      }
      double sum_u = 0.0;
      for (std::size_t i = 0; i < net.size(); ++i) {
        REQUIRE(rec.invites[i].size() <= agents[i].budget);
        for (std::size_t j : rec.invites[i]) {
          REQUIRE(std::count(rec.invited_by[j].begin(), rec.invited_by[j].end(), i) == 1);
        }
        sum_u += rec.utility(i);
      }
      CHECK(sum_u == doctest::Approx(sum_payoffs));
      CHECK(rec.total_utility() == doctest::Approx(sum_payoffs));
      const auto again = play_round(net, agents, est, {tie, InviteRanking::trust}, t, 17);
      REQUIRE(again.invites == rec.invites);
      REQUIRE(again.v == rec.v);
      REQUIRE(again.w == rec.w);
      const auto parallel = play_round(net, agents, est, {tie, InviteRanking::trust}, t, 17, 4);
      REQUIRE(parallel.v == rec.v);
      REQUIRE(parallel.w == rec.w);
    }
  }
}

TEST_CASE("empty network plays no games") {
  const SocialNetwork net(4, {});
  const UtilityEstimator est(GameDistribution::exponential(2.0), 10, 1);
  const auto agents = make_agents(net, 2);
  const auto rec = play_round(net, agents, est, {}, 1, 1);
  CHECK(rec.games.empty());
  CHECK(rec.total_utility() == 0.0);
}

TEST_CASE("follower frequency of agent 7 approaches 17/6 under uniform ties") {
  const auto net = example7_network();
  const UtilityEstimator est(GameDistribution::exponential(2.0), 50, 1);
  const auto agents = make_agents(net, 2);
  double followed = 0.0;
  const int rounds = 10000;
  for (int t = 1; t <= rounds; ++t) {
    const auto plan = plan_known_invitations(net, agents, est, {}, t, 8);
    for (const auto& inv : plan) followed += inv.follower == 6 ? 1.0 : 0.0;
  }
  CHECK(followed / rounds == doctest::Approx(17.0 / 6.0).epsilon(0.02));
}
