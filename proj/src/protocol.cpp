#include "gossipsim/protocol.hpp"

#include <algorithm>
#include <array>

#include "gossipsim/error.hpp"

namespace gossipsim {

namespace {

constexpr std::array<std::string_view, 5> kProtocolNames = {
    "broadcast", "fixed_probability", "probabilistic_broadcast", "dandelion",
    "dandelion_pp"};

std::vector<NodeId> all_except(std::span<const NodeId> neighbors, NodeId from) {
  std::vector<NodeId> out;
  out.reserve(neighbors.size());
  for (NodeId n : neighbors) {
    if (n != from) out.push_back(n);
  }
  return out;
}

ForwardDecision fluff_to(const Message& msg, std::vector<NodeId> targets,
                         NodeState& state) {
  Message fluff = msg;
  fluff.phase = Phase::fluff;
  state.mark_seen(fluff.id, Phase::fluff);
  state.observe_fluff(fluff.id);
  return ForwardDecision{fluff.next_hop(), std::move(targets), std::nullopt};
}

}  // namespace

std::string_view to_string(ProtocolKind kind) noexcept {
  return kProtocolNames[static_cast<std::size_t>(kind)];
}

std::optional<ProtocolKind> parse_protocol_kind(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kProtocolNames.size(); ++i) {
    if (kProtocolNames[i] == text) return static_cast<ProtocolKind>(i);
  }
  return std::nullopt;
}

void validate(const ProtocolConfig& cfg) {
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(cfg.forward_probability)) {
    throw ParameterError("forward_probability must lie in [0, 1]");
  }
  if (!unit(cfg.fluff_probability)) {
    throw ParameterError("fluff_probability must lie in [0, 1]");
  }
  if (cfg.kind == ProtocolKind::dandelion_pp && cfg.failsafe_wait == 0) {
    throw ParameterError("dandelion_pp needs failsafe_wait > 0");
  }
}

bool NodeState::has_seen(std::uint64_t id, Phase phase) const noexcept {
  return std::find(seen_.begin(), seen_.end(), Key{id, phase}) != seen_.end();
}

bool NodeState::mark_seen(std::uint64_t id, Phase phase) {
  if (has_seen(id, phase)) return false;
  seen_.push_back(Key{id, phase});
  return true;
}

void NodeState::arm(const Message& message, std::uint32_t expiry_step) {
  if (timer(message.id) != nullptr) return;
  timers_.push_back(PendingTimer{message, expiry_step, false, false});
}

void NodeState::observe_fluff(std::uint64_t id) noexcept {
  if (auto* t = timer(id)) t->satisfied = true;
}

PendingTimer* NodeState::timer(std::uint64_t id) noexcept {
  for (auto& t : timers_) {
    if (t.message.id == id) return &t;
  }
  return nullptr;
}

const PendingTimer* NodeState::timer(std::uint64_t id) const noexcept {
  return const_cast<NodeState*>(this)->timer(id);
}

void NodeState::clear() noexcept {
  seen_.clear();
  timers_.clear();
}

ForwardDecision on_originate(NodeId node, Message msg,
                             std::span<const NodeId> neighbors,
                             const ProtocolConfig& cfg, NodeState& state,
                             Rng& rng, std::uint32_t step) {
  msg.origin = node;
  msg.hop_count = 0;
  if (!is_dandelion(cfg.kind)) {
    msg.phase = Phase::fluff;
    state.mark_seen(msg.id, Phase::fluff);
    if (msg.ttl_remaining == 0 || neighbors.empty()) return {msg, {}, std::nullopt};
    return ForwardDecision{msg.next_hop(),
                           std::vector<NodeId>(neighbors.begin(), neighbors.end()),
                           std::nullopt};
  }

  if (msg.ttl_remaining == 0 || neighbors.empty()) {
    state.mark_seen(msg.id, Phase::stem);
    msg.phase = Phase::stem;
    return {msg, {}, std::nullopt};
  }
  if (bernoulli(rng, cfg.fluff_probability)) {
    return fluff_to(msg, std::vector<NodeId>(neighbors.begin(), neighbors.end()), state);
  }
  msg.phase = Phase::stem;
  state.mark_seen(msg.id, Phase::stem);
  const NodeId target = neighbors[uniform_below(rng, neighbors.size())];
  ForwardDecision out{msg.next_hop(), {target}, std::nullopt};
  if (cfg.kind == ProtocolKind::dandelion_pp) {
    out.timer = TimerRequest{msg.id, step + cfg.failsafe_wait};
  }
  return out;
}

ForwardDecision on_receive(NodeId /*node*/, const Message& msg, NodeId from,
                           std::span<const NodeId> neighbors,
                           const ProtocolConfig& cfg, NodeState& state,
                           Rng& rng) {
  if (msg.phase == Phase::fluff) state.observe_fluff(msg.id);
  if (msg.ttl_remaining == 0 || !state.mark_seen(msg.id, msg.phase)) {
    return {msg, {}, std::nullopt};
  }
  const Message relay = msg.next_hop();

  switch (cfg.kind) {
    case ProtocolKind::broadcast:
      return {relay, all_except(neighbors, from), std::nullopt};

    case ProtocolKind::fixed_probability: {
      std::vector<NodeId> targets;
      for (NodeId n : neighbors) {
        if (n != from && bernoulli(rng, cfg.forward_probability)) targets.push_back(n);
      }
      return {relay, std::move(targets), std::nullopt};
    }

    case ProtocolKind::probabilistic_broadcast:
      if (bernoulli(rng, cfg.forward_probability)) {
        return {relay, all_except(neighbors, from), std::nullopt};
      }
      return {relay, {}, std::nullopt};

    case ProtocolKind::dandelion:
    case ProtocolKind::dandelion_pp: {
      if (msg.phase == Phase::fluff) {
        return {relay, all_except(neighbors, from), std::nullopt};
      }
      if (bernoulli(rng, cfg.fluff_probability)) {
        return fluff_to(msg, all_except(neighbors, from), state);
      }
      ForwardDecision out{relay, {}, std::nullopt};
      const auto candidates = all_except(neighbors, from);
      if (!candidates.empty()) {
        out.targets.push_back(candidates[uniform_below(rng, candidates.size())]);
      }
      if (cfg.kind == ProtocolKind::dandelion_pp) {
        // Arrival step equals hop_count: every hop takes exactly one step.
        out.timer = TimerRequest{msg.id, msg.hop_count + cfg.failsafe_wait};
      }
      return out;
    }
  }
  return {relay, {}, std::nullopt};
}

ForwardDecision on_timer_expiry(NodeId /*node*/, std::uint64_t message_id,
                                std::span<const NodeId> neighbors,
                                NodeState& state, std::uint32_t step,
                                std::uint32_t epoch_ttl) {
  PendingTimer* t = state.timer(message_id);
  if (t == nullptr || t->satisfied || t->fired) return {};
  t->fired = true;
  if (step >= epoch_ttl || neighbors.empty()) return {};
  Message restart = t->message;
  restart.hop_count = step;
  restart.ttl_remaining = epoch_ttl - step;
  return fluff_to(restart, std::vector<NodeId>(neighbors.begin(), neighbors.end()), state);
}

}  // namespace gossipsim
