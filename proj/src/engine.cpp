#include "gossipsim/engine.hpp"

#include <algorithm>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "engine_detail.hpp"
#include "gossipsim/error.hpp"

namespace gossipsim {

namespace {

struct InFlight {
  NodeId target;
  NodeId from;
  Message message;
};

struct ScheduledTimer {
  std::uint32_t expiry;
  NodeId node;
};

const std::uint64_t kSybilTag = fnv1a("sybil");
const std::uint64_t kVictimTag = fnv1a("victim");
const std::uint64_t kEpochTag = fnv1a("epoch");

}  // namespace

EpochResult run_epoch(const Graph& g, const ProtocolConfig& cfg,
                      const SybilSet& sybils, const EpochConfig& ecfg, Rng& rng,
                      EpochTrace* trace) {
  const std::size_t n = g.node_count();
  if (ecfg.victim >= n) throw ParameterError("victim id out of range");
  if (sybils.contains(ecfg.victim)) {
    throw ParameterError("victim " + std::to_string(ecfg.victim) + " is a Sybil");
  }
  if (ecfg.ttl == 0) throw ParameterError("ttl must be at least 1");

  std::vector<NodeState> states(n);
  std::vector<std::uint8_t> reached(n, 0);
  std::vector<InFlight> current;
  std::vector<InFlight> next;
  std::vector<ScheduledTimer> timers;

  EpochResult result;
  result.victim = ecfg.victim;

  auto emit = [&](NodeId node, const ForwardDecision& d) {
    for (NodeId target : d.targets) next.push_back({target, node, d.message});
    if (d.timer) {
      states[node].arm(d.message, d.timer->expiry_step);
      timers.push_back({d.timer->expiry_step, node});
    }
  };
  auto record = [&](TraceEvent::Kind kind, std::uint32_t step, NodeId node,
                    NodeId from, const Message& msg, const ForwardDecision& d) {
    if (trace != nullptr) {
      trace->events.push_back({kind, step, node, from, msg, sybils.contains(node), d});
    }
  };

  const Message origin_msg{ecfg.epoch_index, ecfg.victim, 0, ecfg.ttl, Phase::fluff};
  reached[ecfg.victim] = 1;
  {
    auto d = on_originate(ecfg.victim, origin_msg, g.neighbors(ecfg.victim), cfg,
                          states[ecfg.victim], rng, 0);
    d = filter_decision(ecfg.victim, sybils, std::move(d));
    record(TraceEvent::Kind::originate, 0, ecfg.victim, ecfg.victim, origin_msg, d);
    emit(ecfg.victim, d);
  }

  for (std::uint32_t step = 1; step <= ecfg.ttl; ++step) {
    current.swap(next);
    next.clear();
    for (const auto& f : current) {
      const bool sybil = sybils.contains(f.target);
      if (!sybil) reached[f.target] = 1;
      auto d = on_receive(f.target, f.message, f.from, g.neighbors(f.target), cfg,
                          states[f.target], rng);
      d = filter_decision(f.target, sybils, std::move(d));
      record(TraceEvent::Kind::receive, step, f.target, f.from, f.message, d);
      emit(f.target, d);
    }
    // Timers armed this step expire later, so iterating by index is safe.
    const std::size_t armed = timers.size();
    for (std::size_t i = 0; i < armed; ++i) {
      if (timers[i].expiry != step) continue;
      const NodeId node = timers[i].node;
      auto d = on_timer_expiry(node, ecfg.epoch_index, g.neighbors(node),
                               states[node], step, ecfg.ttl);
      d = filter_decision(node, sybils, std::move(d));
      if (!d.targets.empty()) {
        ++result.fail_safe_activations;
        record(TraceEvent::Kind::failsafe, step, node, node, d.message, d);
      }
      emit(node, d);
    }
    result.steps_elapsed = step;
    const bool timers_pending = std::any_of(
        timers.begin(), timers.end(), [step](const auto& t) { return t.expiry > step; });
    if (next.empty() && !timers_pending) break;
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (reached[v]) result.reached.push_back(static_cast<NodeId>(v));
  }
  return result;
}

std::uint64_t sybil_seed(const SimulationRun& run) noexcept {
  return derive_seed(run.master_seed, kSybilTag);
}

std::uint64_t epoch_seed(const SimulationRun& run, std::uint64_t epoch_index) noexcept {
  return derive_seed(run.master_seed, kEpochTag, epoch_index);
}

std::vector<NodeId> plan_victims(const Graph& g, const SybilSet& sybils,
                                 const SimulationRun& run) {
  std::vector<NodeId> honest;
  honest.reserve(g.node_count() - sybils.size());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!sybils.contains(static_cast<NodeId>(v))) honest.push_back(static_cast<NodeId>(v));
  }
  if (honest.empty()) throw ParameterError("no honest node left to act as victim");

  const std::uint64_t base = derive_seed(run.master_seed, kVictimTag);
  std::vector<NodeId> order = honest;
  Rng rng(base);
  shuffle(std::span<NodeId>(order), rng);

  const std::size_t count = run.epoch_count();
  std::vector<NodeId> victims(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < order.size()) {
      victims[i] = order[i];
    } else {
      Rng draw(derive_seed(base, i));
      victims[i] = honest[uniform_below(draw, honest.size())];
    }
  }
  return victims;
}

namespace detail {

SimulationSetup prepare_simulation(const Graph& g, const ProtocolConfig& cfg,
                                   const SimulationRun& run) {
  validate(cfg);
  if (run.ttl == 0) throw ParameterError("ttl must be at least 1");
  if (cfg.kind == ProtocolKind::dandelion_pp && run.ttl <= cfg.failsafe_wait) {
    throw ParameterError("dandelion_pp needs ttl > failsafe_wait");
  }
  if (!(run.attacker_fraction >= 0.0 && run.attacker_fraction < 1.0)) {
    throw ParameterError("attacker fraction must lie in [0, 1)");
  }
  if (g.node_count() == 0) throw ParameterError("empty graph");
  SimulationSetup setup;
  setup.sybils = place_sybils(
      g, AdversaryConfig{run.attacker_fraction, Placement::uniform_random,
                         DropPolicy::drop_all, sybil_seed(run)});
  setup.victims = plan_victims(g, setup.sybils, run);
  return setup;
}

EpochResult run_planned_epoch(const Graph& g, const ProtocolConfig& cfg,
                              const SimulationRun& run,
                              const SimulationSetup& setup, std::size_t index) {
  Rng rng(epoch_seed(run, index));
  const EpochConfig ecfg{run.ttl, setup.victims[index], index};
  return run_epoch(g, cfg, setup.sybils, ecfg, rng);
}

}  // namespace detail

SimulationResult run_simulation(const Graph& g, const ProtocolConfig& cfg,
                                const SimulationRun& run, int threads) {
  auto setup = detail::prepare_simulation(g, cfg, run);
  const auto count = static_cast<std::int64_t>(setup.victims.size());
  std::vector<EpochResult> epochs(setup.victims.size());
  std::exception_ptr failure;

#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      epochs[i] = detail::run_planned_epoch(g, cfg, run, setup, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(gossipsim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  SimulationResult out;
  out.epochs = std::move(epochs);
  out.honest_count = g.node_count() - setup.sybils.size();
  out.sybils = std::move(setup.sybils);
  return out;
}

}  // namespace gossipsim
