#include "gossipsim/sweep.hpp"

#include <cmath>
#include <sstream>

#include "gossipsim/error.hpp"

namespace gossipsim {

std::uint64_t fraction_seed(std::uint64_t master_seed, double fraction) noexcept {
  const auto key = static_cast<std::uint64_t>(std::llround(fraction * 1e9));
  return derive_seed(master_seed, fnv1a("fraction"), key);
}

SweepResult run_sweep(const Graph& g, const std::string& topology_label,
                      const ProtocolConfig& cfg, const SimulationRun& run_template,
                      std::span<const double> fractions, int threads) {
  if (fractions.empty()) throw ParameterError("sweep needs at least one fraction");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] < 1.0)) {
      throw ParameterError("sweep fractions must lie in (0, 1)");
    }
    if (i > 0 && !(fractions[i] > fractions[i - 1])) {
      throw ParameterError("sweep fractions must be strictly increasing");
    }
  }

  SweepResult sweep;
  sweep.protocol = std::string(to_string(cfg.kind));
  sweep.topology = topology_label;
  sweep.seed = run_template.master_seed;

  std::ostringstream key;
  key.precision(17);
  key << sweep.protocol << '|' << cfg.forward_probability << '|' << cfg.fluff_probability
      << '|' << cfg.failsafe_wait << '|' << topology_label << '|' << run_template.ttl
      << '|' << run_template.total_steps << '|' << run_template.master_seed;
  for (const auto& e : g.edges()) key << '|' << e.u << ',' << e.v;
  for (double f : fractions) key << '|' << f;
  sweep.fingerprint = fnv1a(key.str());

  for (double f : fractions) {
    SimulationRun run = run_template;
    run.attacker_fraction = f;
    run.master_seed = fraction_seed(run_template.master_seed, f);
    const auto result = run_simulation(g, cfg, run, threads);
    CoveragePoint p = aggregate(result.epochs, result.honest_count);
    p.attacker_fraction = f;
    p.sybil_count = result.sybils.size();
    sweep.points.push_back(p);
  }
  return sweep;
}

SweepResult run_sweep(const TopologySpec& spec, const ProtocolConfig& cfg,
                      const SimulationRun& run_template,
                      std::span<const double> fractions, int threads) {
  const auto generated = generate_with_constraints(spec);
  return run_sweep(generated.graph, describe(spec), cfg, run_template, fractions, threads);
}

}  // namespace gossipsim
