#include <doctest.h>

#include "trustnet/dynamics.hpp"
#include "trustnet/estimator.hpp"
#include "trustnet/network.hpp"

using namespace trustnet;

namespace {

const UtilityEstimator& estimator() {
  static const UtilityEstimator est(GameDistribution::exponential(4.0), 300, 5);
  return est;
}

bool same(const DynamicsResult& a, const DynamicsResult& b) {
  if (a.rounds.size() != b.rounds.size()) return false;
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    for (std::size_t i = 0; i < a.rounds[t].size(); ++i) {
      const auto& x = a.rounds[t][i];
      const auto& y = b.rounds[t][i];
      if (x.delta != y.delta || x.v != y.v || x.w != y.w || x.games_led != y.games_led ||
          x.games_followed != y.games_followed || x.updated != y.updated) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("schedule and mode names") {
  for (auto k : {ScheduleKind::fixed, ScheduleKind::synchronous, ScheduleKind::epoch,
                 ScheduleKind::probabilistic}) {
    CHECK(parse_schedule_kind(to_string(k)) == k);
  }
  CHECK(parse_knowledge_mode("learned") == KnowledgeMode::learned);
  CHECK_THROWS(parse_schedule_kind("sometimes"));
  CHECK_THROWS(UpdateSchedule{ScheduleKind::epoch, 0}.validate());
  CHECK_THROWS(UpdateSchedule{ScheduleKind::probabilistic, 10, 0.0}.validate());
}

TEST_CASE("configuration errors") {
  const auto net = example7_network();
  DynamicsConfig cfg;
  cfg.rounds = 1;
  cfg.initial_delta = {1.0};
  CHECK_THROWS_AS(run_dynamics(net, estimator(), cfg), std::invalid_argument);
  cfg.initial_delta.clear();
  cfg.seeds.pinned[9] = 1.0;
  CHECK_THROWS_AS(run_dynamics(net, estimator(), cfg), std::invalid_argument);
  cfg.seeds.pinned.clear();
  cfg.personalized = true;
  cfg.knowledge = KnowledgeMode::learned;
  CHECK_THROWS_AS(run_dynamics(net, estimator(), cfg), std::invalid_argument);
}

TEST_CASE("fixed schedule keeps trust levels and fills every round") {
  const auto net = example7_network();
  DynamicsConfig cfg;
  cfg.schedule.kind = ScheduleKind::fixed;
  cfg.rounds = 30;
  cfg.initial_delta = {0, 1, 2, 3, 4, 5, 6};
  const auto out = run_dynamics(net, estimator(), cfg);
  REQUIRE(out.rounds.size() == 30);
  for (const auto& round : out.rounds) {
    REQUIRE(round.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(round[i].delta == static_cast<double>(i));
      CHECK_FALSE(round[i].updated);
    }
  }
}

TEST_CASE("pinned agents never move under any schedule") {
  const auto net = karate_club_network();
  for (auto kind : {ScheduleKind::synchronous, ScheduleKind::epoch, ScheduleKind::probabilistic}) {
    for (auto mode : {KnowledgeMode::known, KnowledgeMode::learned}) {
      DynamicsConfig cfg;
      cfg.schedule = {kind, 5, 0.3};
      cfg.knowledge = mode;
      cfg.rounds = 25;
      cfg.search = {30.0, 16, 300};
      cfg.seeds.pinned = {{29, 30.0}, {33, 12.0}};
      const auto out = run_dynamics(net, estimator(), cfg);
      for (const auto& round : out.rounds) {
        CHECK(round[29].delta == 30.0);
        CHECK(round[33].delta == 12.0);
        CHECK_FALSE(round[29].updated);
      }
    }
  }
}

TEST_CASE("epoch and probabilistic schedules update when due") {
  const auto net = karate_club_network();
  DynamicsConfig cfg;
  cfg.schedule = {ScheduleKind::epoch, 7, 0.01};
  cfg.rounds = 30;
  cfg.search = {30.0, 16, 300};
  const auto epoch = run_dynamics(net, estimator(), cfg);
  for (std::size_t t = 0; t < epoch.rounds.size(); ++t) {
    for (const auto& a : epoch.rounds[t]) CHECK(a.updated == ((t + 1) % 7 == 0));
  }
  cfg.schedule = {ScheduleKind::probabilistic, 7, 0.2};
  cfg.rounds = 200;
  const auto prob = run_dynamics(net, estimator(), cfg);
  double updates = 0.0;
  for (const auto& round : prob.rounds) {
    for (const auto& a : round) updates += a.updated ? 1.0 : 0.0;
  }
  CHECK(updates / (200.0 * 34.0) == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  const auto net = karate_club_network();
  for (auto mode : {KnowledgeMode::known, KnowledgeMode::learned}) {
    DynamicsConfig cfg;
    cfg.knowledge = mode;
    cfg.rounds = 15;
    cfg.seed = 77;
    cfg.search = {30.0, 16, 300};
    const auto a = run_dynamics(net, estimator(), cfg);
    const auto b = run_dynamics(net, estimator(), cfg);
    cfg.workers = 3;
    const auto c = run_dynamics(net, estimator(), cfg);
    CHECK(same(a, b));
    CHECK(same(a, c));
    cfg.seed = 78;
    CHECK_FALSE(same(a, run_dynamics(net, estimator(), cfg)));
  }
}

TEST_CASE("learned intervals always contain fixed true trust levels") {
  const auto net = karate_club_network();
  DynamicsConfig cfg;
  cfg.schedule.kind = ScheduleKind::fixed;
  cfg.knowledge = KnowledgeMode::learned;
  cfg.rounds = 60;
  Rng rng(12);
  for (std::size_t i = 0; i < net.size(); ++i) {
    cfg.initial_delta.push_back(static_cast<double>(rng.below(61)) / 2.0);
  }
  const auto out = run_dynamics(net, estimator(), cfg);
  REQUIRE(out.final_knowledge.size() == net.size());
  std::uint64_t games = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j : net.neighbors(i)) {
      const auto& k = out.final_knowledge[i].at(j);
      CHECK(k.view.contains(cfg.initial_delta[j]));
      CHECK(k.last_change == -1);
      CHECK(k.mirror == out.final_knowledge[j].at(i).view);
      games += k.games;
    }
  }
  CHECK(games > 0);
}

TEST_CASE("known dynamics on the karate club climb to high trust") {
  const auto net = karate_club_network();
  const UtilityEstimator est(GameDistribution::exponential(4.0), 1000, 11);
  DynamicsConfig cfg;
  cfg.rounds = 150;
  cfg.seed = 3;
  double late = 0.0;
  std::size_t cells = 0;
  const auto out = run_dynamics(net, est, cfg);
  for (std::size_t t = 100; t < out.rounds.size(); ++t) {
    for (const auto& a : out.rounds[t]) {
      late += a.delta;
      ++cells;
    }
  }
  CHECK(late / static_cast<double>(cells) > 20.0);
}

TEST_CASE("observer sees every round") {
  const auto net = example7_network();
  DynamicsConfig cfg;
  cfg.rounds = 12;
  std::uint64_t seen = 0;
  run_dynamics(net, estimator(), cfg,
               [&](std::uint64_t t, const RoundRecord& rec, const std::vector<AgentRound>& row) {
                 CHECK(t == seen + 1);
                 CHECK(rec.round == t);
                 CHECK(row.size() == 7);
                 ++seen;
               });
  CHECK(seen == 12);
}
