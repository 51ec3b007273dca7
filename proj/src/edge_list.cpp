#include <algorithm>
#include <charconv>
#include <optional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gossipsim/error.hpp"
#include "gossipsim/topology.hpp"

namespace gossipsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

// Parses "key=<u64>" out of a header token.
bool header_field(std::string_view token, std::string_view key,
                  std::uint64_t& out) {
  if (!token.starts_with(key) || token.size() <= key.size() ||
      token[key.size()] != '=') {
    return false;
  }
  return parse_u64(token.substr(key.size() + 1), out);
}

}  // namespace

void save_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes=" << g.node_count() << " edges=" << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (!out) throw IoError("failed writing edge list");
}

Graph load_edge_list(std::istream& in) {
  std::optional<std::uint64_t> nodes;
  std::optional<std::uint64_t> declared_edges;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any_edge = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_no != 1) continue;
      std::uint64_t n = 0;
      std::uint64_t m = 0;
      const auto body = trim(line.substr(1));
      const auto space = body.find(' ');
      if (space == std::string_view::npos ||
          !header_field(trim(body.substr(0, space)), "nodes", n) ||
          !header_field(trim(body.substr(space + 1)), "edges", m)) {
        throw ParseError(line_no, "malformed header, expected '# nodes=<n> edges=<m>'");
      }
      nodes = n;
      declared_edges = m;
      continue;
    }
    const auto space = line.find_first_of(" \t");
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (space == std::string_view::npos || !parse_u64(line.substr(0, space), u) ||
        !parse_u64(trim(line.substr(space + 1)), v)) {
      throw ParseError(line_no, "expected two node ids, got '" + std::string(line) + "'");
    }
    if (nodes && (u >= *nodes || v >= *nodes)) {
      throw ParseError(line_no, "node id out of range for " + std::to_string(*nodes) + " nodes");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    if (u > 0xffffffffULL || v > 0xffffffffULL) {
      throw ParseError(line_no, "node id exceeds 32 bits");
    }
    max_id = std::max({max_id, u, v});
    any_edge = true;
    edges.push_back(make_edge(static_cast<NodeId>(u), static_cast<NodeId>(v)));
  }
  if (declared_edges && *declared_edges != edges.size()) {
    throw ParseError(line_no, "header declares " + std::to_string(*declared_edges) +
                                  " edges but " + std::to_string(edges.size()) + " were read");
  }
  const std::size_t n = nodes ? *nodes : (any_edge ? max_id + 1 : 0);
  try {
    return Graph(n, std::move(edges));
  } catch (const ParameterError& e) {
    throw ParseError(line_no, e.what());
  }
}

}  // namespace gossipsim
