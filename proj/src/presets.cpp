#include "gossipsim/presets.hpp"

#include <array>

namespace gossipsim {

namespace {

constexpr std::string_view kFig1 = R"cfg(# Dandelion, random overlay, 10000 nodes / 40000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 40000
topology.max_diameter = 10
protocol.kind = dandelion
protocol.fluff_probability = 0.1  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig1
)cfg";

constexpr std::string_view kFig2 = R"cfg(# Probabilistic Broadcast, random overlay, 10000 nodes / 40000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 40000
topology.max_diameter = 10
protocol.kind = probabilistic_broadcast
protocol.forward_probability = 0.7  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig2
)cfg";

constexpr std::string_view kFig3 = R"cfg(# Fixed Probability, random overlay, 10000 nodes / 40000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 40000
topology.max_diameter = 10
protocol.kind = fixed_probability
protocol.forward_probability = 0.7  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig3
)cfg";

constexpr std::string_view kFig4 = R"cfg(# Dandelion, random overlay, 10000 nodes / 80000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 80000
topology.max_diameter = 10
protocol.kind = dandelion
protocol.fluff_probability = 0.1  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig4
)cfg";

constexpr std::string_view kFig5 = R"cfg(# Probabilistic Broadcast, random overlay, 10000 nodes / 80000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 80000
topology.max_diameter = 10
protocol.kind = probabilistic_broadcast
protocol.forward_probability = 0.7  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig5
)cfg";

constexpr std::string_view kFig6 = R"cfg(# Fixed Probability, random overlay, 10000 nodes / 80000 edges.
topology.kind = random
topology.nodes = 10000
topology.edges = 80000
topology.max_diameter = 10
protocol.kind = fixed_probability
protocol.forward_probability = 0.7  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig6
)cfg";

constexpr std::string_view kFig7 = R"cfg(# Dandelion, FP and PB, small-world overlay, 10000 nodes / 40000 edges.
topology.kind = small_world
topology.nodes = 10000
topology.edges = 40000
topology.rewire_probability = 0.1  # assumed: not reported
topology.max_diameter = 12  # rewired lattice at p=0.1 measures 11
protocol.kind = dandelion, fixed_probability, probabilistic_broadcast
protocol.forward_probability = 0.7  # assumed: not reported
protocol.fluff_probability = 0.1  # assumed: not reported
run.ttl = 16
run.total_steps = 5000
run.seed = 2021
sweep.fractions = 0.01:0.99:0.01
output.dir = out/fig7
)cfg";

constexpr std::array<Preset, 7> kPresets = {{
    {"fig1", "Dandelion, random overlay, 10000 nodes / 40000 edges", kFig1},
    {"fig2", "Probabilistic Broadcast, random overlay, 10000 nodes / 40000 edges", kFig2},
    {"fig3", "Fixed Probability, random overlay, 10000 nodes / 40000 edges", kFig3},
    {"fig4", "Dandelion, random overlay, 10000 nodes / 80000 edges", kFig4},
    {"fig5", "Probabilistic Broadcast, random overlay, 10000 nodes / 80000 edges", kFig5},
    {"fig6", "Fixed Probability, random overlay, 10000 nodes / 80000 edges", kFig6},
    {"fig7", "Dandelion, FP and PB, small-world overlay, 10000 nodes / 40000 edges", kFig7},
}};

}  // namespace

std::span<const Preset> presets() noexcept { return kPresets; }

const Preset* find_preset(std::string_view name) noexcept {
  if (name.ends_with(".cfg")) name.remove_suffix(4);
  for (const auto& p : kPresets) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace gossipsim
