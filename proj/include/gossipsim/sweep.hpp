#pragma once

#include <span>
#include <string>

#include "gossipsim/engine.hpp"
#include "gossipsim/metrics.hpp"
#include "gossipsim/topology.hpp"

namespace gossipsim {

// Sub-seed for one sweep point; depends on the fraction value, not its
// position, so two grids sharing a fraction share its Sybil placement.
std::uint64_t fraction_seed(std::uint64_t master_seed, double fraction) noexcept;

// One run_simulation per attacker fraction over a shared graph. Fractions
// must be non-empty, strictly increasing and inside (0, 1).
SweepResult run_sweep(const Graph& g, const std::string& topology_label,
                      const ProtocolConfig& cfg, const SimulationRun& run_template,
                      std::span<const double> fractions, int threads = 0);

// Generates the graph (with constraints) first.
SweepResult run_sweep(const TopologySpec& spec, const ProtocolConfig& cfg,
                      const SimulationRun& run_template,
                      std::span<const double> fractions, int threads = 0);

}  // namespace gossipsim
