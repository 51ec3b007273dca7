#pragma once

#include "gossipsim/engine.hpp"

namespace gossipsim::detail {

// Shared prologue of both simulation drivers: validation, Sybil placement
// and the victim plan.
struct SimulationSetup {
  SybilSet sybils;
  std::vector<NodeId> victims;
};

SimulationSetup prepare_simulation(const Graph& g, const ProtocolConfig& cfg,
                                   const SimulationRun& run);

EpochResult run_planned_epoch(const Graph& g, const ProtocolConfig& cfg,
                              const SimulationRun& run,
                              const SimulationSetup& setup, std::size_t index);

}  // namespace gossipsim::detail
