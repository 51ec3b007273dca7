#include "gossipsim/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gossipsim/error.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

namespace {

constexpr std::array<std::string_view, 4> kKindNames = {
    "random", "small_world", "k_regular", "scale_free"};

std::uint64_t max_edges(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) / 2;
}

// Maps t in [0, n(n-1)/2) to the t-th pair in row-major (u < v) order.
Edge decode_pair(std::uint64_t t, std::uint64_t n) {
  const double b = 2.0 * static_cast<double>(n) - 1.0;
  const double disc = b * b - 8.0 * static_cast<double>(t);
  auto u = static_cast<std::uint64_t>(
      std::max(0.0, std::floor((b - std::sqrt(std::max(disc, 0.0))) / 2.0)));
  auto row_start = [n](std::uint64_t r) { return r * (2 * n - r - 1) / 2; };
  while (u > 0 && row_start(u) > t) --u;
  while (u + 1 < n && row_start(u + 1) <= t) ++u;
  const std::uint64_t v = u + 1 + (t - row_start(u));
  return Edge{static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

// BFS eccentricity from `source`; returns max distance or nullopt if some
// node is unreachable. `dist` and `queue` are caller-owned scratch.
std::optional<std::size_t> eccentricity(const Graph& g, NodeId source,
                                        std::vector<std::uint32_t>& dist,
                                        std::vector<NodeId>& queue) {
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::size_t head = 0;
  std::uint32_t far = 0;
  while (head < queue.size()) {
    const NodeId x = queue[head++];
    for (NodeId y : g.neighbors(x)) {
      if (dist[y] == kUnseen) {
        dist[y] = dist[x] + 1;
        far = dist[y];
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != g.node_count()) return std::nullopt;
  return far;
}

void check_node_count(std::size_t n) {
  if (n > std::numeric_limits<NodeId>::max()) {
    throw ParameterError("node count exceeds the 32-bit id space");
  }
}

}  // namespace

std::string_view to_string(TopologyKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<TopologyKind> parse_topology_kind(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == text) return static_cast<TopologyKind>(i);
  }
  return std::nullopt;
}

void validate(const TopologySpec& spec) {
  if (spec.node_count == 0) throw ParameterError("topology needs at least one node");
  check_node_count(spec.node_count);
  if (!spec.edge_count && !spec.mean_degree) {
    throw ParameterError("topology needs an edge count or a mean degree");
  }
  if (spec.edge_count && spec.mean_degree &&
      2 * *spec.edge_count != *spec.mean_degree * spec.node_count) {
    throw ParameterError("mean degree " + std::to_string(*spec.mean_degree) +
                         " is inconsistent with " +
                         std::to_string(*spec.edge_count) + " edges over " +
                         std::to_string(spec.node_count) + " nodes");
  }
  if (spec.rewire_probability) {
    if (spec.kind != TopologyKind::small_world) {
      throw ParameterError("rewire probability only applies to small_world");
    }
    const double p = *spec.rewire_probability;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParameterError("rewire probability must lie in [0, 1]");
    }
  }
  if (spec.retry_budget == 0) throw ParameterError("retry budget must be positive");
  // The remaining checks live in the generators; resolve to trigger them early.
  (void)resolved_edge_count(spec);
}

std::size_t resolved_edge_count(const TopologySpec& spec) {
  const std::size_t n = spec.node_count;
  auto degree = [&]() -> std::size_t {
    if (spec.mean_degree) return *spec.mean_degree;
    if ((2 * *spec.edge_count) % n != 0) {
      throw ParameterError(std::string(to_string(spec.kind)) +
                           " needs 2*edges divisible by nodes");
    }
    return 2 * *spec.edge_count / n;
  };
  switch (spec.kind) {
    case TopologyKind::random: {
      if (spec.edge_count) return *spec.edge_count;
      if ((*spec.mean_degree * n) % 2 != 0) {
        throw ParameterError("mean degree times nodes must be even");
      }
      return *spec.mean_degree * n / 2;
    }
    case TopologyKind::small_world:
    case TopologyKind::k_regular:
      return degree() * n / 2;
    case TopologyKind::scale_free: {
      const std::size_t k = degree();
      const std::size_t attach = std::max<std::size_t>(1, k / 2);
      if (n <= attach) throw ParameterError("scale_free needs nodes > attach");
      return attach * (attach + 1) / 2 + (n - attach - 1) * attach;
    }
  }
  return 0;
}

std::string describe(const TopologySpec& spec) {
  return std::string(to_string(spec.kind)) + "-n" +
         std::to_string(spec.node_count) + "-m" +
         std::to_string(resolved_edge_count(spec));
}

std::string describe(std::string_view kind, const Graph& g) {
  return std::string(kind) + "-n" + std::to_string(g.node_count()) + "-m" +
         std::to_string(g.edge_count());
}

Graph generate_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw ParameterError("G(n,m) needs n >= 1");
  check_node_count(n);
  const std::uint64_t total = max_edges(n);
  if (m > total) {
    throw ParameterError("G(n,m): m=" + std::to_string(m) +
                         " exceeds the simple-graph maximum " +
                         std::to_string(total));
  }
  // Floyd's sampling of m distinct pair indices.
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = total - m; j < total; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());
  std::vector<Edge> edges;
  edges.reserve(m);
  for (auto t : indices) edges.push_back(decode_pair(t, n));
  return Graph(n, std::move(edges));
}

Graph generate_small_world(std::size_t n, std::size_t k, double p_rewire,
                           std::uint64_t seed) {
  if (k < 2 || k % 2 != 0) throw ParameterError("small_world needs an even k >= 2");
  if (k >= n) throw ParameterError("small_world needs k < n");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw ParameterError("rewire probability must lie in [0, 1]");
  }
  check_node_count(n);
  std::vector<std::set<NodeId>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      const auto v = static_cast<NodeId>((i + j) % n);
      adj[i].insert(v);
      adj[v].insert(static_cast<NodeId>(i));
    }
  }
  Rng rng(seed);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!bernoulli(rng, p_rewire)) continue;
      const auto u = static_cast<NodeId>(i);
      const auto v = static_cast<NodeId>((i + j) % n);
      if (adj[u].size() >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(uniform_below(rng, n));
      } while (w == u || adj[u].contains(w));
      adj[u].erase(v);
      adj[v].erase(u);
      adj[u].insert(w);
      adj[w].insert(u);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(n * k / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : adj[u]) {
      if (u < v) edges.push_back(Edge{static_cast<NodeId>(u), v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_k_regular(std::size_t n, std::size_t k, std::uint64_t seed,
                         std::size_t retry_budget) {
  if ((n * k) % 2 != 0) throw ParameterError("k_regular needs n*k even");
  if (k >= n) throw ParameterError("k_regular needs k < n");
  check_node_count(n);
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
    std::set<Edge> edges;
    std::vector<NodeId> stubs;
    stubs.reserve(n * k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) stubs.push_back(static_cast<NodeId>(i));
    }
    bool stuck = false;
    while (!stubs.empty()) {
      // Pair shuffled stubs; unusable pairs go back into the pool.
      std::map<NodeId, std::size_t> leftover;
      shuffle(std::span<NodeId>(stubs), rng);
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const NodeId a = stubs[i];
        const NodeId b = stubs[i + 1];
        if (a != b && !edges.contains(make_edge(a, b))) {
          edges.insert(make_edge(a, b));
        } else {
          ++leftover[a];
          ++leftover[b];
        }
      }
      bool suitable = leftover.empty();
      for (auto a = leftover.begin(); !suitable && a != leftover.end(); ++a) {
        for (auto b = std::next(a); b != leftover.end(); ++b) {
          if (!edges.contains(make_edge(a->first, b->first))) {
            suitable = true;
            break;
          }
        }
      }
      if (!suitable) {
        stuck = true;
        break;
      }
      stubs.clear();
      for (const auto& [node, count] : leftover) {
        stubs.insert(stubs.end(), count, node);
      }
    }
    if (!stuck) return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
  throw GenerationError("k_regular construction failed after " +
                        std::to_string(retry_budget) + " attempts");
}

Graph generate_scale_free(std::size_t n, std::size_t attach, std::uint64_t seed) {
  if (attach == 0) throw ParameterError("scale_free needs attach >= 1");
  if (n <= attach) throw ParameterError("scale_free needs n > attach");
  check_node_count(n);
  std::vector<Edge> edges;
  std::vector<NodeId> endpoints;  // each node repeated once per incident edge
  for (NodeId a = 0; a <= attach; ++a) {
    for (NodeId b = a + 1; b <= attach; ++b) {
      edges.push_back(Edge{a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  Rng rng(seed);
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(attach + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < attach) {
      const NodeId t = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (NodeId t : targets) {
      edges.push_back(make_edge(t, v));
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate(const TopologySpec& spec) {
  validate(spec);
  const std::size_t n = spec.node_count;
  const std::size_t m = resolved_edge_count(spec);
  switch (spec.kind) {
    case TopologyKind::random:
      return generate_random(n, m, spec.seed);
    case TopologyKind::small_world:
      return generate_small_world(
          n, 2 * m / n, spec.rewire_probability.value_or(kDefaultRewireProbability),
          spec.seed);
    case TopologyKind::k_regular:
      return generate_k_regular(n, 2 * m / n, spec.seed, spec.retry_budget);
    case TopologyKind::scale_free: {
      const std::size_t k = spec.mean_degree ? *spec.mean_degree : 2 * *spec.edge_count / n;
      return generate_scale_free(n, std::max<std::size_t>(1, k / 2), spec.seed);
    }
  }
  throw ParameterError("unknown topology kind");
}

GeneratedGraph generate_with_constraints(const TopologySpec& spec) {
  validate(spec);
  std::string failed;
  for (std::size_t attempt = 0; attempt < spec.retry_budget; ++attempt) {
    TopologySpec trial = spec;
    trial.seed = attempt == 0 ? spec.seed : derive_seed(spec.seed, attempt);
    Graph g = generate(trial);
    if (!is_connected(g)) {
      failed = "connected";
      continue;
    }
    if (spec.max_diameter && !diameter_at_most(g, *spec.max_diameter)) {
      failed = "diameter <= " + std::to_string(*spec.max_diameter);
      continue;
    }
    return GeneratedGraph{std::move(g), attempt, trial.seed};
  }
  throw ConstraintError(failed, spec.retry_budget);
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  return eccentricity(g, 0, dist, queue).has_value();
}

namespace {

// Shared kernel: max eccentricity over all sources, stopping early once the
// graph is known to be disconnected or to exceed `bound`.
std::optional<std::size_t> bounded_diameter(const Graph& g, std::size_t bound,
                                            int threads) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0;
  if (!is_connected(g)) return std::nullopt;
  std::size_t best = 0;
  bool exceeded = false;
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(team)
#else
  (void)threads;
#endif
  {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
    std::size_t local = 0;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      bool stop;
#pragma omp atomic read
      stop = exceeded;
      if (stop) continue;
      const auto ecc = eccentricity(g, static_cast<NodeId>(s), dist, queue);
      local = std::max(local, *ecc);
      if (local > bound) {
#pragma omp atomic write
        exceeded = true;
      }
    }
#pragma omp critical(gossipsim_diameter)
    best = std::max(best, local);
  }
  return best;
}

}  // namespace

std::optional<std::size_t> diameter(const Graph& g, int threads) {
  return bounded_diameter(g, std::numeric_limits<std::size_t>::max(), threads);
}

bool diameter_at_most(const Graph& g, std::size_t bound, int threads) {
  const auto d = bounded_diameter(g, bound, threads);
  return d && *d <= bound;
}

namespace reference {

std::optional<std::size_t> diameter(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue;
  std::size_t best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const auto ecc = eccentricity(g, static_cast<NodeId>(s), dist, queue);
    if (!ecc) return std::nullopt;
    best = std::max(best, *ecc);
  }
  return best;
}

}  // namespace reference

}  // namespace gossipsim
