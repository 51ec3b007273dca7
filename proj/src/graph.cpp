#include "gossipsim/graph.hpp"

#include <algorithm>
#include <string>

#include "gossipsim/error.hpp"

namespace gossipsim {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(node_count) {
  for (auto& e : edges_) {
    if (e.u == e.v) {
      throw ParameterError("self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= node_count || e.v >= node_count) {
      throw ParameterError("edge endpoint out of range for " +
                           std::to_string(node_count) + " nodes");
    }
    e = make_edge(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end());
      dup != edges_.end()) {
    throw ParameterError("duplicate edge " + std::to_string(dup->u) + " " +
                         std::to_string(dup->v));
  }
  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (std::size_t i = 0; i < node_count; ++i) adjacency_[i].reserve(degree[i]);
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
  if (a >= node_count() || b >= node_count()) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

double Graph::mean_degree() const noexcept {
  if (adjacency_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) /
         static_cast<double>(adjacency_.size());
}

}  // namespace gossipsim
