#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gossipsim/graph.hpp"
#include "gossipsim/protocol.hpp"

namespace gossipsim {

enum class Placement { uniform_random };
enum class DropPolicy { drop_all };

struct AdversaryConfig {
  double fraction = 0.0;  // in [0, 1)
  Placement placement = Placement::uniform_random;
  DropPolicy policy = DropPolicy::drop_all;
  std::uint64_t seed = 0;

  friend bool operator==(const AdversaryConfig&, const AdversaryConfig&) = default;
};

// round-half-up(fraction * node_count).
std::size_t sybil_count(double fraction, std::size_t node_count);

// Attacker identities. Immutable; shared read-only by concurrent epochs.
class SybilSet {
 public:
  SybilSet() = default;
  SybilSet(std::size_t node_count, std::vector<NodeId> ids);

  bool contains(NodeId node) const noexcept {
    return node < mask_.size() && mask_[node] != 0;
  }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<NodeId>& ids() const noexcept { return ids_; }  // sorted

 private:
  std::vector<NodeId> ids_;
  std::vector<std::uint8_t> mask_;
};

// Uniform sample without replacement of sybil_count(fraction, n) nodes.
// Throws ParameterError when no honest node would remain.
SybilSet place_sybils(const Graph& g, const AdversaryConfig& cfg);

// drop_all: a Sybil emits nothing (no relays, no timers).
ForwardDecision filter_decision(NodeId node, const SybilSet& sybils,
                                ForwardDecision decision);

}  // namespace gossipsim
