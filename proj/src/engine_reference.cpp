#include "engine_detail.hpp"

namespace gossipsim::reference {

SimulationResult run_simulation(const Graph& g, const ProtocolConfig& cfg,
                                const SimulationRun& run) {
  auto setup = detail::prepare_simulation(g, cfg, run);
  SimulationResult out;
  out.epochs.reserve(setup.victims.size());
  for (std::size_t i = 0; i < setup.victims.size(); ++i) {
    out.epochs.push_back(detail::run_planned_epoch(g, cfg, run, setup, i));
  }
  out.honest_count = g.node_count() - setup.sybils.size();
  out.sybils = std::move(setup.sybils);
  return out;
}

}  // namespace gossipsim::reference
