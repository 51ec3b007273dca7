// gossipsim: command-line front end.
//
//   gossipsim gen     --config <cfg> [--out <dir>]     write the overlay edge list
//   gossipsim run     --config <cfg> [--out <dir>]     full attacker-fraction sweep
//   gossipsim plot    [csv...] [--out <dir>]           regenerate plot_coverage.py
//   gossipsim presets [--show <name>]                  bundled configurations
//
// --seed overrides run.seed (as does GOSSIPSIM_SEED, with lower precedence),
// --threads overrides run.threads and --set key=value any other key.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gossipsim/config.hpp"
#include "gossipsim/error.hpp"
#include "gossipsim/experiment.hpp"
#include "gossipsim/presets.hpp"
#include "gossipsim/topology.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> threads;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool require_config) {
  auto* c = cmd->add_option("--config,-c", opts.config, "Config file or bundled preset name");
  if (require_config) c->required();
  cmd->add_option("--seed", opts.seed, "Master seed (overrides run.seed)");
  cmd->add_option("--threads", opts.threads, "Worker threads or 'auto'");
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--set", opts.sets, "Override a config key: key=value")->take_all();
}

gossipsim::ParsedConfig load(const CommonOptions& opts) {
  const std::string text = gossipsim::load_config_text(opts.config);
  std::vector<std::string> overrides;
  if (const char* env = std::getenv("GOSSIPSIM_SEED"); env != nullptr && *env != '\0') {
    overrides.push_back(std::string("run.seed=") + env);
  }
  overrides.insert(overrides.end(), opts.sets.begin(), opts.sets.end());
  if (opts.seed) overrides.push_back("run.seed=" + std::to_string(*opts.seed));
  if (opts.threads) overrides.push_back("run.threads=" + *opts.threads);
  if (opts.out) overrides.push_back("output.dir=" + *opts.out);
  return gossipsim::parse_config(text, overrides);
}

int cmd_gen(const CommonOptions& opts) {
  const auto parsed = load(opts);
  const auto& cfg = parsed.config;
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw gossipsim::IoError("cannot create " + dir.string());

  const auto built = gossipsim::build_graph(cfg);
  const fs::path file = dir / "graph.edges";
  const fs::path tmp = dir / "graph.edges.partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw gossipsim::IoError("cannot write " + tmp.string());
    gossipsim::save_edge_list(built.graph, out);
  }
  fs::rename(tmp, file);
  std::cout << built.label << " retries=" << built.retries
            << " mean_degree=" << built.graph.mean_degree() << "\n"
            << file.string() << "\n";
  return 0;
}

int cmd_run(const CommonOptions& opts) {
  const auto parsed = load(opts);
  const auto dump = gossipsim::dump_config(parsed.config, parsed.defaulted_keys);
  const auto report = gossipsim::run_experiment(parsed.config, dump, &std::cerr);
  for (const auto& f : report.files) std::cout << f.string() << "\n";
  return 0;
}

int cmd_plot(const std::vector<std::string>& csvs, const std::optional<std::string>& out) {
  const fs::path dir = out ? fs::path(*out) : fs::path("out");
  std::vector<fs::path> files(csvs.begin(), csvs.end());
  if (files.empty()) {
    if (!fs::is_directory(dir)) throw gossipsim::IoError("no such directory " + dir.string());
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw gossipsim::IoError("no CSV files to plot in " + dir.string());
  std::cout << gossipsim::write_plot_script(dir, files).string() << "\n";
  return 0;
}

int cmd_presets(const std::optional<std::string>& show) {
  if (show) {
    const auto* p = gossipsim::find_preset(*show);
    if (p == nullptr) {
      std::cerr << "unknown preset '" << *show << "'\n";
      return 2;
    }
    std::cout << p->text;
    return 0;
  }
  for (const auto& p : gossipsim::presets()) {
    std::cout << p.name << ".cfg  " << p.summary << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-stepped gossip dissemination simulator under Sybil attack", "gossipsim"};
  app.require_subcommand(1);

  CommonOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate the overlay and write its edge list");
  add_common(gen, gen_opts, true);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Run the attacker-fraction sweep(s)");
  add_common(run, run_opts, true);

  std::vector<std::string> plot_csvs;
  std::optional<std::string> plot_out;
  auto* plot = app.add_subcommand("plot", "Regenerate the plot script from CSV files");
  plot->add_option("csv", plot_csvs, "CSV files (default: every *.csv in --out)");
  plot->add_option("--out", plot_out, "Directory for plot_coverage.py");

  std::optional<std::string> show;
  auto* list = app.add_subcommand("presets", "List bundled configurations");
  list->add_option("--show", show, "Print one preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) return cmd_gen(gen_opts);
    if (*run) return cmd_run(run_opts);
    if (*plot) return cmd_plot(plot_csvs, plot_out);
    if (*list) return cmd_presets(show);
  } catch (const gossipsim::Error& e) {
    std::cerr << "gossipsim: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gossipsim: unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
