#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/engine.hpp"
#include "gossipsim/protocol.hpp"
#include "gossipsim/topology.hpp"

namespace gossipsim {

// Everything one `gossipsim run` needs. Built by parse_config; every field is
// validated and carries its default when the source omitted it.
struct ExperimentConfig {
  TopologySpec topology;                       // node_count 0 when loading
  std::optional<std::uint64_t> topology_seed;  // nullopt: derived from run.master_seed
  std::optional<std::string> edge_list;        // load instead of generating
  std::vector<ProtocolKind> protocols;         // one sweep each, same graph
  ProtocolConfig protocol;                     // shared parameters; kind unused
  SimulationRun run;                           // attacker_fraction unused
  AdversaryConfig adversary;                   // fraction and seed set per point
  std::vector<double> fractions;
  std::string output_dir;
  int threads = 0;  // 0: auto

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<std::string> defaulted_keys;  // keys filled from defaults
};

// Parses "key = value" lines ('#' starts a comment). `overrides` are
// "key=value" strings applied after the text, e.g. from --set or --seed.
// Throws ConfigError naming the key and line.
ParsedConfig parse_config(std::string_view text,
                          std::span<const std::string> overrides = {});

// Canonical text form. Re-parsing yields an equal config. Keys listed in
// `defaulted` are tagged with a trailing "# default" comment.
std::string dump_config(const ExperimentConfig& cfg,
                        std::span<const std::string> defaulted = {});

// Stable hash of the canonical dump.
std::uint64_t fingerprint(const ExperimentConfig& cfg);

// Every recognised key, in dump order.
std::vector<std::string_view> config_keys();

// Topology spec with the effective seed filled in.
TopologySpec resolved_topology(const ExperimentConfig& cfg);

ProtocolConfig protocol_config(const ExperimentConfig& cfg, ProtocolKind kind);

}  // namespace gossipsim
