#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gossipsim/graph.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

enum class ProtocolKind {
  broadcast,
  fixed_probability,
  probabilistic_broadcast,
  dandelion,
  dandelion_pp,
};

std::string_view to_string(ProtocolKind kind) noexcept;
std::optional<ProtocolKind> parse_protocol_kind(std::string_view text) noexcept;

inline bool is_dandelion(ProtocolKind kind) noexcept {
  return kind == ProtocolKind::dandelion || kind == ProtocolKind::dandelion_pp;
}

enum class Phase : std::uint8_t { stem, fluff };

struct Message {
  std::uint64_t id = 0;
  NodeId origin = 0;
  std::uint32_t hop_count = 0;
  std::uint32_t ttl_remaining = 0;
  Phase phase = Phase::fluff;

  // The copy a relay puts on the wire.
  Message next_hop() const noexcept {
    Message m = *this;
    ++m.hop_count;
    --m.ttl_remaining;
    return m;
  }

  friend bool operator==(const Message&, const Message&) = default;
};

inline constexpr double kDefaultForwardProbability = 0.7;
inline constexpr double kDefaultFluffProbability = 0.1;
inline constexpr std::uint32_t kDefaultFailsafeWait = 6;

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::broadcast;
  double forward_probability = kDefaultForwardProbability;  // FP / PB
  double fluff_probability = kDefaultFluffProbability;      // Dandelion variants
  std::uint32_t failsafe_wait = kDefaultFailsafeWait;       // Dandelion++ only

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

// Throws ParameterError on out-of-range probabilities or a zero fail-safe wait.
void validate(const ProtocolConfig& cfg);

struct TimerRequest {
  std::uint64_t message_id = 0;
  std::uint32_t expiry_step = 0;

  friend bool operator==(const TimerRequest&, const TimerRequest&) = default;
};

// What one node sends at the next step. Every target receives `message`.
struct ForwardDecision {
  Message message;
  std::vector<NodeId> targets;
  std::optional<TimerRequest> timer;

  bool empty() const noexcept { return targets.empty() && !timer; }

  friend bool operator==(const ForwardDecision&, const ForwardDecision&) = default;
};

struct PendingTimer {
  Message message;  // lineage the fail-safe would re-originate
  std::uint32_t expiry_step = 0;
  bool satisfied = false;  // a fluff copy was observed
  bool fired = false;
};

// Per-node protocol state for one epoch: the seen-cache (keyed by message id
// and phase, so a stem relay still relays the fluff copy) and fail-safe timers.
class NodeState {
 public:
  bool has_seen(std::uint64_t id, Phase phase) const noexcept;
  // Returns false if the key was already present.
  bool mark_seen(std::uint64_t id, Phase phase);

  void arm(const Message& message, std::uint32_t expiry_step);
  void observe_fluff(std::uint64_t id) noexcept;
  PendingTimer* timer(std::uint64_t id) noexcept;
  const PendingTimer* timer(std::uint64_t id) const noexcept;

  void clear() noexcept;

 private:
  struct Key {
    std::uint64_t id;
    Phase phase;
    friend bool operator==(const Key&, const Key&) = default;
  };
  std::vector<Key> seen_;
  std::vector<PendingTimer> timers_;
};

// Victim's first transmission at `step`. FP and PB start with a full
// broadcast; Dandelion variants flip the fluff coin once and otherwise stem
// to one uniformly chosen neighbour (Dandelion++ also asks for a timer).
ForwardDecision on_originate(NodeId node, Message msg,
                             std::span<const NodeId> neighbors,
                             const ProtocolConfig& cfg, NodeState& state,
                             Rng& rng, std::uint32_t step = 0);

// Relay decision for a received copy. Duplicates (same id and phase) and
// copies with no TTL left yield an empty decision. The forwarder is never a
// target.
ForwardDecision on_receive(NodeId node, const Message& msg, NodeId from,
                           std::span<const NodeId> neighbors,
                           const ProtocolConfig& cfg, NodeState& state,
                           Rng& rng);

// Dandelion++ fail-safe. If no fluff copy was observed before expiry the node
// broadcasts a fresh fluff copy to every neighbour, with the TTL the epoch
// has left (epoch_ttl - step).
ForwardDecision on_timer_expiry(NodeId node, std::uint64_t message_id,
                                std::span<const NodeId> neighbors,
                                NodeState& state, std::uint32_t step,
                                std::uint32_t epoch_ttl);

}  // namespace gossipsim
