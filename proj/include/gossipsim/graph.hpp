#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gossipsim {

using NodeId = std::uint32_t;

// Unordered pair with first < second.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph. Immutable once built: edges are kept sorted and
// canonical (u < v), adjacency lists are sorted ascending and symmetric.
class Graph {
 public:
  Graph() = default;

  // Throws ParameterError on a self-loop, duplicate edge or out-of-range id.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId node) const noexcept {
    return adjacency_[node];
  }
  std::size_t degree(NodeId node) const noexcept {
    return adjacency_[node].size();
  }
  bool has_edge(NodeId a, NodeId b) const noexcept;

  double mean_degree() const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count() == b.node_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Normalizes (a, b) into a canonical Edge.
inline Edge make_edge(NodeId a, NodeId b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

}  // namespace gossipsim
