#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gossipsim/graph.hpp"

namespace gossipsim {

enum class TopologyKind { random, small_world, k_regular, scale_free };

std::string_view to_string(TopologyKind kind) noexcept;
std::optional<TopologyKind> parse_topology_kind(std::string_view text) noexcept;

inline constexpr double kDefaultRewireProbability = 0.1;
inline constexpr std::size_t kDefaultRetryBudget = 100;

struct TopologySpec {
  TopologyKind kind = TopologyKind::random;
  std::size_t node_count = 0;
  std::optional<std::size_t> edge_count;
  std::optional<std::size_t> mean_degree;
  // small_world only; defaults to kDefaultRewireProbability when unset.
  std::optional<double> rewire_probability;
  std::optional<std::size_t> max_diameter;
  std::uint64_t seed = 0;
  std::size_t retry_budget = kDefaultRetryBudget;

  friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

// Throws ParameterError when the spec is inconsistent.
void validate(const TopologySpec& spec);

// Edge count the spec will produce (exact for random, small_world, k_regular).
std::size_t resolved_edge_count(const TopologySpec& spec);

// Short label used in CSV output, e.g. "random-n10000-m40000".
std::string describe(const TopologySpec& spec);
std::string describe(std::string_view kind, const Graph& g);

// Uniform G(n, m): exactly m distinct edges.
Graph generate_random(std::size_t n, std::size_t m, std::uint64_t seed);

// Watts-Strogatz ring lattice with k nearest neighbours, each lattice edge
// rewired with probability p_rewire. Always n*k/2 edges.
Graph generate_small_world(std::size_t n, std::size_t k, double p_rewire,
                           std::uint64_t seed);

// Uniform-ish k-regular graph via the pairing model with local rejection of
// self-loops and duplicates; restarts up to retry_budget times.
Graph generate_k_regular(std::size_t n, std::size_t k, std::uint64_t seed,
                         std::size_t retry_budget = kDefaultRetryBudget);

// Barabasi-Albert preferential attachment seeded by a clique of attach+1
// nodes; every later node adds `attach` edges.
Graph generate_scale_free(std::size_t n, std::size_t attach, std::uint64_t seed);

// Dispatches on spec.kind with spec.seed. No connectivity guarantee.
Graph generate(const TopologySpec& spec);

struct GeneratedGraph {
  Graph graph;
  std::size_t retries = 0;  // rejected attempts before success
  std::uint64_t seed = 0;   // sub-seed of the accepted attempt
};

// Regenerates from derived sub-seeds until the graph is connected and, when
// spec.max_diameter is set, its diameter fits. Throws ConstraintError naming
// the last failed constraint once spec.retry_budget attempts are used.
GeneratedGraph generate_with_constraints(const TopologySpec& spec);

// Single-source BFS connectivity test. Empty graphs count as connected.
bool is_connected(const Graph& g);

// Longest shortest path by all-pairs BFS; nullopt when disconnected.
// Sources are distributed over OpenMP threads (threads = 0: runtime default).
std::optional<std::size_t> diameter(const Graph& g, int threads = 0);

// Early-exit variant: true iff connected with diameter <= bound.
bool diameter_at_most(const Graph& g, std::size_t bound, int threads = 0);

namespace reference {
// Serial all-pairs BFS kept as the baseline for the parallel kernel.
std::optional<std::size_t> diameter(const Graph& g);
}  // namespace reference

// Edge-list text: "# nodes=<n> edges=<m>" then "u v" per line, u < v, sorted.
void save_edge_list(const Graph& g, std::ostream& out);

// Accepts the format above. Without a header the node count is max id + 1.
// Throws ParseError carrying the offending line number.
Graph load_edge_list(std::istream& in);

}  // namespace gossipsim
