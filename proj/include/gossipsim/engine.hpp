#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/graph.hpp"
#include "gossipsim/protocol.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

inline constexpr std::uint32_t kDefaultTtl = 16;
inline constexpr std::uint32_t kDefaultTotalSteps = 5000;

struct EpochConfig {
  std::uint32_t ttl = kDefaultTtl;
  NodeId victim = 0;
  std::uint64_t epoch_index = 0;  // doubles as the message id
};

struct SimulationRun {
  std::uint32_t total_steps = kDefaultTotalSteps;
  std::uint32_t ttl = kDefaultTtl;
  double attacker_fraction = 0.0;
  std::uint64_t master_seed = 0;

  // Whole epochs that fit; leftover steps are discarded (5000 / 16 -> 312).
  std::size_t epoch_count() const noexcept {
    return ttl == 0 ? 0 : total_steps / ttl;
  }

  friend bool operator==(const SimulationRun&, const SimulationRun&) = default;
};

struct EpochResult {
  NodeId victim = 0;
  std::vector<NodeId> reached;  // honest nodes holding the message, sorted
  std::uint32_t steps_elapsed = 0;
  std::uint32_t fail_safe_activations = 0;

  friend bool operator==(const EpochResult&, const EpochResult&) = default;
};

// Optional per-epoch event log, for tests and debugging.
struct TraceEvent {
  enum class Kind { originate, receive, failsafe };
  Kind kind = Kind::receive;
  std::uint32_t step = 0;
  NodeId node = 0;
  NodeId from = 0;           // meaningful for receive only
  Message received;          // copy as delivered (receive) or originated
  bool sybil = false;
  ForwardDecision decision;  // after the adversary filter
};

struct EpochTrace {
  std::vector<TraceEvent> events;
};

// One victim, one transaction. Step 0 originates; a copy sent at step t is
// processed at t + 1; timers are checked after that step's deliveries.
// Throws ParameterError if the victim is a Sybil or out of range.
EpochResult run_epoch(const Graph& g, const ProtocolConfig& cfg,
                      const SybilSet& sybils, const EpochConfig& ecfg, Rng& rng,
                      EpochTrace* trace = nullptr);

struct SimulationResult {
  std::vector<EpochResult> epochs;  // in epoch_index order
  SybilSet sybils;
  std::size_t honest_count = 0;
};

// Seed streams derived from SimulationRun::master_seed.
std::uint64_t sybil_seed(const SimulationRun& run) noexcept;
std::uint64_t epoch_seed(const SimulationRun& run, std::uint64_t epoch_index) noexcept;

// Victim per epoch: a shuffle of the honest nodes, then uniform draws with
// replacement (per-epoch streams) once every honest node served once.
std::vector<NodeId> plan_victims(const Graph& g, const SybilSet& sybils,
                                 const SimulationRun& run);

// Places Sybils once, then runs every epoch. Epochs are spread over OpenMP
// threads (threads = 0: runtime default); results do not depend on the
// schedule.
SimulationResult run_simulation(const Graph& g, const ProtocolConfig& cfg,
                                const SimulationRun& run, int threads = 0);

namespace reference {
// Plain sequential loop over epochs; the baseline for run_simulation.
SimulationResult run_simulation(const Graph& g, const ProtocolConfig& cfg,
                                const SimulationRun& run);
}  // namespace reference

}  // namespace gossipsim
