#include "gossipsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include "gossipsim/error.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

namespace {

// Thrown by value parsers; rewrapped with key and line.
struct ValueError {
  std::string what;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_none(std::string_view v) { return v == "none"; }

std::uint64_t to_u64(std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc{} || ptr != end) {
    throw ValueError{"expected a non-negative integer, got '" + std::string(v) + "'"};
  }
  return out;
}

std::uint32_t to_u32(std::string_view v) {
  const auto x = to_u64(v);
  if (x > std::numeric_limits<std::uint32_t>::max()) {
    throw ValueError{"value '" + std::string(v) + "' is too large"};
  }
  return static_cast<std::uint32_t>(x);
}

double to_double(std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ValueError{"expected a number, got '" + std::string(v) + "'"};
  }
  return out;
}

std::string show(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
std::string show_opt(const std::optional<T>& v) {
  if (!v) return "none";
  if constexpr (std::is_floating_point_v<T>) {
    return show(*v);
  } else {
    return std::to_string(*v);
  }
}

// Rounds away binary noise from range arithmetic (0.07000000000000001 -> 0.07).
double tidy(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::vector<double> parse_fractions(std::string_view v) {
  std::vector<double> out;
  if (v.find(':') != std::string_view::npos) {
    const auto a = v.find(':');
    const auto b = v.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw ValueError{"range needs start:stop:step, got '" + std::string(v) + "'"};
    }
    const double start = to_double(trim(v.substr(0, a)));
    const double stop = to_double(trim(v.substr(a + 1, b - a - 1)));
    const double step = to_double(trim(v.substr(b + 1)));
    if (!(step > 0.0) || stop < start) throw ValueError{"empty or invalid range"};
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(tidy(start + static_cast<double>(i) * step));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const auto item = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
    out.push_back(to_double(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct KeyDef {
  std::string_view key;
  std::string (*default_for)(const ExperimentConfig&);
  void (*apply)(ExperimentConfig&, std::string_view);
  std::string (*show)(const ExperimentConfig&);
};

template <std::size_t N>
struct Literal {
  constexpr Literal(const char (&s)[N]) { std::copy_n(s, N, text); }
  char text[N];
};

template <Literal L>
std::string fixed_default(const ExperimentConfig&) {
  return L.text;
}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      {"topology.kind", fixed_default<"random">,
       [](ExperimentConfig& c, std::string_view v) {
         const auto k = parse_topology_kind(v);
         if (!k) {
           throw ValueError{"unknown topology kind '" + std::string(v) +
                            "' (random, small_world, k_regular, scale_free)"};
         }
         c.topology.kind = *k;
       },
       [](const ExperimentConfig& c) { return std::string(to_string(c.topology.kind)); }},
      {"topology.nodes", fixed_default<"none">,
       [](ExperimentConfig& c, std::string_view v) {
         c.topology.node_count = is_none(v) ? 0 : to_u64(v);
       },
       [](const ExperimentConfig& c) {
         return c.topology.node_count == 0 ? std::string("none")
                                           : std::to_string(c.topology.node_count);
       }},
      {"topology.edges", fixed_default<"none">,
       [](ExperimentConfig& c, std::string_view v) {
         c.topology.edge_count = is_none(v) ? std::nullopt : std::optional<std::size_t>(to_u64(v));
       },
       [](const ExperimentConfig& c) { return show_opt(c.topology.edge_count); }},
      {"topology.mean_degree", fixed_default<"none">,
       [](ExperimentConfig& c, std::string_view v) {
         c.topology.mean_degree = is_none(v) ? std::nullopt : std::optional<std::size_t>(to_u64(v));
       },
       [](const ExperimentConfig& c) { return show_opt(c.topology.mean_degree); }},
      {"topology.rewire_probability",
       [](const ExperimentConfig& c) {
         return c.topology.kind == TopologyKind::small_world ? show(kDefaultRewireProbability)
                                                             : std::string("none");
       },
       [](ExperimentConfig& c, std::string_view v) {
         c.topology.rewire_probability =
             is_none(v) ? std::nullopt : std::optional<double>(to_double(v));
       },
       [](const ExperimentConfig& c) { return show_opt(c.topology.rewire_probability); }},
      {"topology.max_diameter", fixed_default<"none">,
       [](ExperimentConfig& c, std::string_view v) {
         c.topology.max_diameter = is_none(v) ? std::nullopt : std::optional<std::size_t>(to_u64(v));
       },
       [](const ExperimentConfig& c) { return show_opt(c.topology.max_diameter); }},
      {"topology.seed", fixed_default<"auto">,
       [](ExperimentConfig& c, std::string_view v) {
         c.topology_seed = v == "auto" ? std::nullopt : std::optional<std::uint64_t>(to_u64(v));
       },
       [](const ExperimentConfig& c) {
         return c.topology_seed ? std::to_string(*c.topology_seed) : std::string("auto");
       }},
      {"topology.retry_budget", fixed_default<"100">,
       [](ExperimentConfig& c, std::string_view v) { c.topology.retry_budget = to_u64(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.topology.retry_budget); }},
      {"topology.edge_list", fixed_default<"none">,
       [](ExperimentConfig& c, std::string_view v) {
         c.edge_list = is_none(v) ? std::nullopt : std::optional<std::string>(v);
       },
       [](const ExperimentConfig& c) { return c.edge_list.value_or("none"); }},
      {"protocol.kind", fixed_default<"broadcast">,
       [](ExperimentConfig& c, std::string_view v) {
         c.protocols.clear();
         std::size_t pos = 0;
         while (pos <= v.size()) {
           const auto comma = v.find(',', pos);
           const auto item =
               trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
           const auto k = parse_protocol_kind(item);
           if (!k) {
             throw ValueError{"unknown protocol '" + std::string(item) +
                              "' (broadcast, fixed_probability, probabilistic_broadcast, "
                              "dandelion, dandelion_pp)"};
           }
           if (std::find(c.protocols.begin(), c.protocols.end(), *k) != c.protocols.end()) {
             throw ValueError{"protocol '" + std::string(item) + "' listed twice"};
           }
           c.protocols.push_back(*k);
           if (comma == std::string_view::npos) break;
           pos = comma + 1;
         }
       },
       [](const ExperimentConfig& c) {
         std::string out;
         for (auto k : c.protocols) {
           if (!out.empty()) out += ", ";
           out += to_string(k);
         }
         return out;
       }},
      {"protocol.forward_probability", fixed_default<"0.7">,
       [](ExperimentConfig& c, std::string_view v) { c.protocol.forward_probability = to_double(v); },
       [](const ExperimentConfig& c) { return show(c.protocol.forward_probability); }},
      {"protocol.fluff_probability", fixed_default<"0.1">,
       [](ExperimentConfig& c, std::string_view v) { c.protocol.fluff_probability = to_double(v); },
       [](const ExperimentConfig& c) { return show(c.protocol.fluff_probability); }},
      {"protocol.failsafe_wait", fixed_default<"6">,
       [](ExperimentConfig& c, std::string_view v) { c.protocol.failsafe_wait = to_u32(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.protocol.failsafe_wait); }},
      {"run.ttl", fixed_default<"16">,
       [](ExperimentConfig& c, std::string_view v) { c.run.ttl = to_u32(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.run.ttl); }},
      {"run.total_steps", fixed_default<"5000">,
       [](ExperimentConfig& c, std::string_view v) { c.run.total_steps = to_u32(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.run.total_steps); }},
      {"run.seed", fixed_default<"1">,
       [](ExperimentConfig& c, std::string_view v) { c.run.master_seed = to_u64(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.run.master_seed); }},
      {"run.threads", fixed_default<"auto">,
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "auto") {
           c.threads = 0;
           return;
         }
         const auto t = to_u64(v);
         if (t == 0 || t > 4096) throw ValueError{"threads must be 'auto' or 1..4096"};
         c.threads = static_cast<int>(t);
       },
       [](const ExperimentConfig& c) {
         return c.threads == 0 ? std::string("auto") : std::to_string(c.threads);
       }},
      {"adversary.placement", fixed_default<"uniform_random">,
       [](ExperimentConfig& c, std::string_view v) {
         if (v != "uniform_random") {
           throw ValueError{"unknown placement '" + std::string(v) + "' (uniform_random)"};
         }
         c.adversary.placement = Placement::uniform_random;
       },
       [](const ExperimentConfig&) { return std::string("uniform_random"); }},
      {"adversary.policy", fixed_default<"drop_all">,
       [](ExperimentConfig& c, std::string_view v) {
         if (v != "drop_all") throw ValueError{"unknown policy '" + std::string(v) + "' (drop_all)"};
         c.adversary.policy = DropPolicy::drop_all;
       },
       [](const ExperimentConfig&) { return std::string("drop_all"); }},
      {"sweep.fractions", fixed_default<"0.01:0.99:0.01">,
       [](ExperimentConfig& c, std::string_view v) { c.fractions = parse_fractions(v); },
       [](const ExperimentConfig& c) {
         std::string out;
         for (double f : c.fractions) {
           if (!out.empty()) out += ", ";
           out += show(f);
         }
         return out;
       }},
      {"output.dir", fixed_default<"out">,
       [](ExperimentConfig& c, std::string_view v) {
         if (v.empty()) throw ValueError{"output directory must not be empty"};
         c.output_dir = std::string(v);
       },
       [](const ExperimentConfig& c) { return c.output_dir; }},
  };
  return table;
}

const KeyDef* find_key(std::string_view key) {
  for (const auto& def : key_table()) {
    if (def.key == key) return &def;
  }
  return nullptr;
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](std::string_view key, const std::string& what) {
    throw ConfigError(std::string(key), 0, what);
  };
  if (!c.edge_list) {
    if (c.topology.node_count == 0) fail("topology.nodes", "required unless topology.edge_list is set");
    if (!c.topology.edge_count && !c.topology.mean_degree) {
      fail("topology.edges", "either topology.edges or topology.mean_degree is required");
    }
    if (c.topology.edge_count && c.topology.mean_degree &&
        2 * *c.topology.edge_count != *c.topology.mean_degree * c.topology.node_count) {
      fail("topology.mean_degree", "inconsistent with topology.edges (mean degree = 2*edges/nodes)");
    }
    if (c.topology.rewire_probability && c.topology.kind != TopologyKind::small_world) {
      fail("topology.rewire_probability", "only applies to topology.kind = small_world");
    }
    try {
      validate(c.topology);
    } catch (const ParameterError& e) {
      fail("topology", e.what());
    }
  }
  if (c.topology.retry_budget == 0) fail("topology.retry_budget", "must be positive");
  if (c.protocols.empty()) fail("protocol.kind", "at least one protocol is required");
  ProtocolConfig probe = c.protocol;
  for (auto k : c.protocols) {
    probe.kind = k;
    if (!(probe.forward_probability >= 0.0 && probe.forward_probability <= 1.0)) {
      fail("protocol.forward_probability", "must lie in [0, 1]");
    }
    if (!(probe.fluff_probability >= 0.0 && probe.fluff_probability <= 1.0)) {
      fail("protocol.fluff_probability", "must lie in [0, 1]");
    }
    if (k == ProtocolKind::dandelion_pp) {
      if (probe.failsafe_wait == 0) fail("protocol.failsafe_wait", "must be positive for dandelion_pp");
      if (c.run.ttl <= probe.failsafe_wait) {
        fail("run.ttl", "must exceed protocol.failsafe_wait for dandelion_pp");
      }
    }
  }
  if (c.run.ttl == 0) fail("run.ttl", "must be at least 1");
  if (c.run.total_steps < c.run.ttl) fail("run.total_steps", "must be at least run.ttl (one epoch)");
  if (c.fractions.empty()) fail("sweep.fractions", "at least one fraction is required");
  for (std::size_t i = 0; i < c.fractions.size(); ++i) {
    if (!(c.fractions[i] > 0.0 && c.fractions[i] < 1.0)) fail("sweep.fractions", "fractions must lie in (0, 1)");
    if (i > 0 && !(c.fractions[i] > c.fractions[i - 1])) {
      fail("sweep.fractions", "fractions must be strictly increasing");
    }
  }
}

void apply(ExperimentConfig& cfg, const KeyDef& def, std::string_view value, std::size_t line) {
  try {
    def.apply(cfg, value);
  } catch (const ValueError& e) {
    throw ConfigError(std::string(def.key), line, e.what);
  }
}

}  // namespace

ParsedConfig parse_config(std::string_view text, std::span<const std::string> overrides) {
  ParsedConfig parsed;
  ExperimentConfig& cfg = parsed.config;
  std::set<std::string_view> assigned;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const KeyDef* def = find_key(key);
    if (def == nullptr) throw ConfigError(std::string(key), line_no, "unknown key");
    if (!assigned.insert(def->key).second) throw ConfigError(std::string(key), line_no, "duplicate key");
    apply(cfg, *def, value, line_no);
  }

  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError(item, 0, "override must be 'key=value'");
    const auto key = trim(std::string_view(item).substr(0, eq));
    const auto value = trim(std::string_view(item).substr(eq + 1));
    const KeyDef* def = find_key(key);
    if (def == nullptr) throw ConfigError(std::string(key), 0, "unknown key");
    assigned.insert(def->key);
    apply(cfg, *def, value, 0);
  }

  for (const auto& def : key_table()) {
    if (assigned.contains(def.key)) continue;
    apply(cfg, def, def.default_for(cfg), 0);
    parsed.defaulted_keys.emplace_back(def.key);
  }
  validate_config(cfg);
  return parsed;
}

std::string dump_config(const ExperimentConfig& cfg, std::span<const std::string> defaulted) {
  std::string out = "# gossipsim normalized configuration\n";
  for (const auto& def : key_table()) {
    out += std::string(def.key) + " = " + def.show(cfg);
    if (std::find(defaulted.begin(), defaulted.end(), def.key) != defaulted.end()) {
      out += "  # default";
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fingerprint(const ExperimentConfig& cfg) { return fnv1a(dump_config(cfg)); }

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> keys;
  for (const auto& def : key_table()) keys.push_back(def.key);
  return keys;
}

TopologySpec resolved_topology(const ExperimentConfig& cfg) {
  TopologySpec spec = cfg.topology;
  spec.seed = cfg.topology_seed ? *cfg.topology_seed
                                : derive_seed(cfg.run.master_seed, fnv1a("topology"));
  return spec;
}

ProtocolConfig protocol_config(const ExperimentConfig& cfg, ProtocolKind kind) {
  ProtocolConfig p = cfg.protocol;
  p.kind = kind;
  return p;
}

}  // namespace gossipsim
