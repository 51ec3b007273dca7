#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gossipsim/engine.hpp"
#include "gossipsim/error.hpp"
#include "gossipsim/metrics.hpp"
#include "gossipsim/sweep.hpp"
#include "gossipsim/topology.hpp"
#include "oracles.hpp"

using namespace gossipsim;

namespace {

ProtocolConfig protocol(ProtocolKind kind, double p = kDefaultForwardProbability,
                        double q = kDefaultFluffProbability) {
  ProtocolConfig cfg;
  cfg.kind = kind;
  cfg.forward_probability = p;
  cfg.fluff_probability = q;
  return cfg;
}

std::vector<bool> mask(std::size_t n, const SybilSet& s) {
  std::vector<bool> m(n, false);
  for (NodeId id : s.ids()) m[id] = true;
  return m;
}

}  // namespace

TEST(RunEpoch, LineGraphFullFlood) {
  Rng rng(1);
  const auto r = run_epoch(oracle::path_graph(4), protocol(ProtocolKind::broadcast), SybilSet(4, {}),
                           EpochConfig{16, 0, 0}, rng);
  EXPECT_EQ(r.reached, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_EQ(r.victim, 0u);
}

TEST(RunEpoch, SybilCutVertex) {
  Rng rng(1);
  const auto r = run_epoch(oracle::path_graph(4), protocol(ProtocolKind::broadcast), SybilSet(4, {1}),
                           EpochConfig{16, 0, 0}, rng);
  EXPECT_EQ(r.reached, (std::vector<NodeId>{0}));
}

TEST(RunEpoch, VictimMustBeHonest) {
  Rng rng(1);
  EXPECT_THROW(run_epoch(oracle::path_graph(4), protocol(ProtocolKind::broadcast), SybilSet(4, {2}),
                         EpochConfig{16, 2, 0}, rng),
               ParameterError);
}

TEST(RunEpoch, BroadcastMatchesHonestBfs) {
  for (std::uint32_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 2 + seed % 29;
    const Graph g = oracle::coin_graph(n, 0.05 + 0.02 * (seed % 10), seed);
    const double f = (seed % 7) / 10.0;
    const auto sybils = place_sybils(g, {f, Placement::uniform_random, DropPolicy::drop_all, seed});
    const auto m = mask(n, sybils);
    const unsigned ttl = 1 + seed % 16;
    for (NodeId victim = 0; victim < n; ++victim) {
      if (m[victim]) continue;
      Rng rng(seed);
      const auto r = run_epoch(g, protocol(ProtocolKind::broadcast), sybils,
                               EpochConfig{ttl, victim, 0}, rng);
      ASSERT_EQ(r.reached, oracle::honest_reach(g, m, victim, ttl))
          << "seed " << seed << " victim " << victim;
    }
  }
}

TEST(RunEpoch, ExhaustiveSybilPlacementsOnSmallGraphs) {
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const std::size_t n = 7 + seed;  // up to 10 nodes
    const Graph g = oracle::coin_graph(n, 0.35, seed + 100);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<NodeId> ids;
      for (NodeId v = 0; v < n; ++v)
        if (bits & (1u << v)) ids.push_back(v);
      const SybilSet sybils(n, ids);
      const auto m = mask(n, sybils);
      for (NodeId victim = 0; victim < n; ++victim) {
        if (m[victim]) continue;
        Rng rng(7);
        const auto r = run_epoch(g, protocol(ProtocolKind::broadcast), sybils,
                                 EpochConfig{16, victim, 0}, rng);
        ASSERT_EQ(r.reached, oracle::honest_reach(g, m, victim, 16));
      }
    }
  }
}

TEST(RunEpoch, ReachStaysInsideTtlBall) {
  const Graph g = generate_random(300, 900, 5);
  const std::vector<bool> none(300, false);
  for (unsigned ttl : {1u, 2u, 3u}) {
    for (auto kind : {ProtocolKind::broadcast, ProtocolKind::fixed_probability,
                      ProtocolKind::dandelion_pp}) {
      Rng rng(ttl);
      auto cfg = protocol(kind);
      cfg.failsafe_wait = 1;
      if (kind == ProtocolKind::dandelion_pp && ttl <= cfg.failsafe_wait) continue;
      const auto r = run_epoch(g, cfg, SybilSet(300, {}), EpochConfig{ttl, 0, 0}, rng);
      const auto ball = oracle::honest_reach(g, none, 0, ttl);
      EXPECT_TRUE(std::includes(ball.begin(), ball.end(), r.reached.begin(), r.reached.end()));
    }
  }
}

TEST(RunEpoch, TraceInvariants) {
  const Graph g = generate_random(200, 800, 9);
  for (auto kind : {ProtocolKind::broadcast, ProtocolKind::fixed_probability,
                    ProtocolKind::probabilistic_broadcast, ProtocolKind::dandelion,
                    ProtocolKind::dandelion_pp}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto sybils = place_sybils(g, {0.3, Placement::uniform_random, DropPolicy::drop_all, seed});
      NodeId victim = 0;
      while (sybils.contains(victim)) ++victim;
      Rng rng(seed);
      EpochTrace trace;
      const auto cfg = protocol(kind, 0.7, 0.3);
      const auto r = run_epoch(g, cfg, sybils, EpochConfig{16, victim, seed}, rng, &trace);

      std::map<NodeId, int> emissions;
      std::map<NodeId, int> failsafes;
      for (const auto& ev : trace.events) {
        const auto& d = ev.decision;
        if (ev.kind == TraceEvent::Kind::receive) {
          EXPECT_EQ(ev.received.hop_count, ev.step) << "one step per hop";
          EXPECT_LE(ev.received.hop_count, 16u);
          EXPECT_EQ(ev.received.hop_count + ev.received.ttl_remaining, 16u);
          EXPECT_EQ(std::count(d.targets.begin(), d.targets.end(), ev.from), 0);
        }
        if (ev.sybil) EXPECT_TRUE(d.empty()) << "Sybil emitted";
        for (NodeId t : d.targets) EXPECT_TRUE(g.has_edge(ev.node, t));
        if (!d.targets.empty()) {
          if (ev.kind == TraceEvent::Kind::failsafe) {
            ++failsafes[ev.node];
          } else if (d.message.phase == Phase::fluff) {
            ++emissions[ev.node];
          }
        }
      }
      for (const auto& [node, count] : emissions) EXPECT_LE(count, 1) << "node " << node;
      for (const auto& [node, count] : failsafes) EXPECT_LE(count, 1) << "node " << node;
      EXPECT_EQ(r.fail_safe_activations,
                static_cast<std::uint32_t>(std::count_if(
                    trace.events.begin(), trace.events.end(),
                    [](const auto& e) { return e.kind == TraceEvent::Kind::failsafe; })));
      for (NodeId v : r.reached) EXPECT_FALSE(sybils.contains(v));
      EXPECT_TRUE(std::binary_search(r.reached.begin(), r.reached.end(), victim));
    }
  }
}

TEST(RunEpoch, FailsafeRecoversStemLostToSybil) {
  // Line 0-1-...-9, victim 0, Sybil 5. The stem is forced along the line
  // (forwarder excluded) and dies at 5; node 0's timer fires at step 6 and
  // its fluff reaches 1..4 by step 10, satisfying their own timers on the way.
  auto cfg = protocol(ProtocolKind::dandelion_pp, 0.7, 0.0);
  cfg.failsafe_wait = 6;
  Rng rng(3);
  EpochTrace trace;
  const auto r = run_epoch(oracle::path_graph(10), cfg, SybilSet(10, {5}), EpochConfig{16, 0, 0},
                           rng, &trace);
  EXPECT_EQ(r.reached, (std::vector<NodeId>{0, 1, 2, 3, 4}));
  EXPECT_EQ(r.fail_safe_activations, 1u);
  const auto fs = std::find_if(trace.events.begin(), trace.events.end(),
                               [](const auto& e) { return e.kind == TraceEvent::Kind::failsafe; });
  ASSERT_NE(fs, trace.events.end());
  EXPECT_EQ(fs->step, 6u);
  EXPECT_EQ(fs->node, 0u);
  EXPECT_EQ(fs->decision.targets, (std::vector<NodeId>{1}));
}

TEST(RunEpoch, PlainDandelionLosesStemToSybil) {
  Rng rng(3);
  const auto r = run_epoch(oracle::path_graph(10), protocol(ProtocolKind::dandelion, 0.7, 0.0),
                           SybilSet(10, {5}), EpochConfig{16, 0, 0}, rng);
  EXPECT_EQ(r.reached, (std::vector<NodeId>{0, 1, 2, 3, 4}));
  EXPECT_EQ(r.fail_safe_activations, 0u);
  Rng rng2(3);
  const auto cut = run_epoch(oracle::path_graph(10), protocol(ProtocolKind::dandelion, 0.7, 0.0),
                             SybilSet(10, {1}), EpochConfig{16, 0, 0}, rng2);
  EXPECT_EQ(cut.reached, (std::vector<NodeId>{0}));
}

TEST(RunEpoch, FailsafeFromEveryStemNode) {
  // Star centre 0 stems to a Sybil leaf; the centre's timer floods the rest.
  auto cfg = protocol(ProtocolKind::dandelion_pp, 0.7, 0.0);
  const Graph star = oracle::star_graph(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto r = run_epoch(star, cfg, SybilSet(6, {3}), EpochConfig{16, 0, 0}, rng);
    EXPECT_EQ(r.reached, (std::vector<NodeId>{0, 1, 2, 4, 5}));
  }
}

TEST(RunSimulation, PaperEpochCount) {
  const Graph g = generate_random(50, 150, 1);
  SimulationRun run;
  run.master_seed = 3;
  EXPECT_EQ(run.epoch_count(), 312u);
  EXPECT_EQ(run_simulation(g, protocol(ProtocolKind::broadcast), run).epochs.size(), 312u);
}

TEST(RunSimulation, NoAttackFullCoverage) {
  TopologySpec spec;
  spec.node_count = 300;
  spec.mean_degree = 6;
  spec.seed = 4;
  const auto g = generate_with_constraints(spec).graph;
  SimulationRun run;
  run.total_steps = 16 * 40;
  const auto res = run_simulation(g, protocol(ProtocolKind::broadcast), run);
  for (const auto& e : res.epochs) EXPECT_EQ(e.reached.size(), 300u);
}

TEST(RunSimulation, DeterministicAndScheduleIndependent) {
  const Graph g = generate_random(400, 1600, 6);
  for (auto kind : {ProtocolKind::fixed_probability, ProtocolKind::dandelion_pp}) {
    SimulationRun run;
    run.total_steps = 16 * 50;
    run.attacker_fraction = 0.35;
    run.master_seed = 11;
    const auto cfg = protocol(kind);
    const auto a = run_simulation(g, cfg, run, 1);
    const auto b = run_simulation(g, cfg, run, 4);
    const auto serial = reference::run_simulation(g, cfg, run);
    EXPECT_EQ(a.epochs, b.epochs);
    EXPECT_EQ(a.epochs, serial.epochs);
    EXPECT_EQ(a.sybils.ids(), serial.sybils.ids());
    EXPECT_EQ(a.honest_count, 400u - a.sybils.size());
  }
}

TEST(RunSimulation, EpochsAreOrderInsensitive) {
  const Graph g = generate_random(200, 800, 2);
  SimulationRun run;
  run.total_steps = 16 * 20;
  run.attacker_fraction = 0.2;
  run.master_seed = 5;
  const auto cfg = protocol(ProtocolKind::fixed_probability);
  const auto all = run_simulation(g, cfg, run);
  const auto sybils = place_sybils(g, {0.2, Placement::uniform_random, DropPolicy::drop_all, sybil_seed(run)});
  const auto victims = plan_victims(g, sybils, run);
  for (std::size_t i = victims.size(); i-- > 0;) {
    Rng rng(epoch_seed(run, i));
    EXPECT_EQ(run_epoch(g, cfg, sybils, EpochConfig{run.ttl, victims[i], i}, rng), all.epochs[i]);
  }
}

TEST(PlanVictims, DistinctUntilExhaustedThenWithReplacement) {
  const Graph g = generate_random(40, 100, 2);
  SimulationRun run;
  run.total_steps = 16 * 100;
  run.attacker_fraction = 0.25;
  run.master_seed = 8;
  const auto sybils = place_sybils(g, {0.25, Placement::uniform_random, DropPolicy::drop_all, 1});
  const auto victims = plan_victims(g, sybils, run);
  ASSERT_EQ(victims.size(), 100u);
  const std::set<NodeId> first(victims.begin(), victims.begin() + 30);
  EXPECT_EQ(first.size(), 30u);
  for (NodeId v : victims) EXPECT_FALSE(sybils.contains(v));
}

TEST(RunSimulation, NoHonestNodes) {
  const Graph g = generate_random(10, 20, 1);
  SimulationRun run;
  run.attacker_fraction = 0.96;
  EXPECT_THROW(run_simulation(g, protocol(ProtocolKind::broadcast), run), ParameterError);
  run.attacker_fraction = 1.0;
  EXPECT_THROW(run_simulation(g, protocol(ProtocolKind::broadcast), run), ParameterError);
}

TEST(RunSimulation, DandelionPlusPlusNeedsTtlAboveWait) {
  const Graph g = generate_random(10, 20, 1);
  SimulationRun run;
  run.ttl = 6;
  EXPECT_THROW(run_simulation(g, protocol(ProtocolKind::dandelion_pp), run), ParameterError);
}

TEST(RunSweep, NinetyNinePoints) {
  const Graph g = generate_random(100, 400, 1);
  std::vector<double> fractions;
  for (int i = 1; i <= 99; ++i) fractions.push_back(i / 100.0);
  SimulationRun run;
  run.total_steps = 32;
  const auto sweep = run_sweep(g, "random-n100-m400", protocol(ProtocolKind::broadcast), run, fractions);
  ASSERT_EQ(sweep.points.size(), 99u);
  for (std::size_t i = 0; i < 99; ++i) {
    EXPECT_EQ(sweep.points[i].sybil_count, static_cast<std::size_t>(std::llround(fractions[i] * 100)));
  }
}

TEST(RunSweep, SingleHonestNodeDenominator) {
  const Graph g = generate_random(100, 400, 1);
  SimulationRun run;
  run.total_steps = 16 * 5;
  const std::vector<double> fractions{0.99};
  const auto sweep = run_sweep(g, "x", protocol(ProtocolKind::broadcast), run, fractions);
  ASSERT_EQ(sweep.points.size(), 1u);
  EXPECT_EQ(sweep.points[0].sybil_count, 99u);
  EXPECT_EQ(sweep.points[0].honest_count, 1u);
  EXPECT_DOUBLE_EQ(sweep.points[0].mean_coverage, 1.0);
}

TEST(RunSweep, MatchesBfsOracleMean) {
  TopologySpec spec;
  spec.node_count = 30;
  spec.edge_count = 60;
  spec.seed = 12;
  const auto g = generate_with_constraints(spec).graph;
  SimulationRun run;
  run.total_steps = 16 * 40;
  run.master_seed = 77;
  const std::vector<double> fractions{0.5};
  const auto sweep = run_sweep(g, "x", protocol(ProtocolKind::broadcast), run, fractions);

  SimulationRun point = run;
  point.attacker_fraction = 0.5;
  point.master_seed = fraction_seed(run.master_seed, 0.5);
  const auto sybils = place_sybils(g, {0.5, Placement::uniform_random, DropPolicy::drop_all, sybil_seed(point)});
  const auto m = mask(30, sybils);
  double sum = 0;
  const auto victims = plan_victims(g, sybils, point);
  for (NodeId v : victims) sum += oracle::honest_reach(g, m, v, 16).size() / 15.0;
  EXPECT_NEAR(sweep.points[0].mean_coverage, sum / victims.size(), 1e-12);
}

TEST(RunSweep, RejectsBadFractions) {
  const Graph g = generate_random(20, 40, 1);
  SimulationRun run;
  run.total_steps = 16;
  const auto cfg = protocol(ProtocolKind::broadcast);
  EXPECT_THROW(run_sweep(g, "x", cfg, run, std::vector<double>{}), ParameterError);
  EXPECT_THROW(run_sweep(g, "x", cfg, run, std::vector<double>{0.0}), ParameterError);
  EXPECT_THROW(run_sweep(g, "x", cfg, run, std::vector<double>{0.5, 0.4}), ParameterError);
  EXPECT_THROW(run_sweep(g, "x", cfg, run, std::vector<double>{1.0}), ParameterError);
}
