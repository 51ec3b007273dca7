#include "gossipsim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gossipsim/error.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

std::size_t sybil_count(double fraction, std::size_t node_count) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ParameterError("attacker fraction must lie in [0, 1)");
  }
  return static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(node_count) + 0.5));
}

SybilSet::SybilSet(std::size_t node_count, std::vector<NodeId> ids)
    : ids_(std::move(ids)), mask_(node_count, 0) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (NodeId id : ids_) {
    if (id >= node_count) throw ParameterError("sybil id out of range");
    mask_[id] = 1;
  }
}

SybilSet place_sybils(const Graph& g, const AdversaryConfig& cfg) {
  const std::size_t n = g.node_count();
  const std::size_t count = sybil_count(cfg.fraction, n);
  if (count >= n && n > 0) {
    throw ParameterError("fraction " + std::to_string(cfg.fraction) + " leaves no honest node among " +
                         std::to_string(n));
  }
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  // Partial Fisher-Yates: the first `count` slots form the sample.
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return SybilSet(n, std::move(pool));
}

ForwardDecision filter_decision(NodeId node, const SybilSet& sybils,
                                ForwardDecision decision) {
  if (!sybils.contains(node)) return decision;
  decision.targets.clear();
  decision.timer.reset();
  return decision;
}

}  // namespace gossipsim
