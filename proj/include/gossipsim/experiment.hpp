#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gossipsim/config.hpp"
#include "gossipsim/graph.hpp"
#include "gossipsim/metrics.hpp"

namespace gossipsim {

// Reads a config file, falling back to a bundled preset of the same name.
// Throws IoError when neither exists.
std::string load_config_text(const std::string& path_or_preset);

struct BuiltGraph {
  Graph graph;
  std::string label;  // CSV topology column
  std::size_t retries = 0;
};

// Loads topology.edge_list or runs generate_with_constraints.
BuiltGraph build_graph(const ExperimentConfig& cfg);

struct ExperimentReport {
  std::vector<SweepResult> sweeps;
  std::vector<std::filesystem::path> files;  // everything written
};

// Builds the graph once, runs one sweep per protocol and writes
// <protocol>.csv, plot_coverage.py and config.cfg into cfg.output_dir.
// Files are staged and renamed at the end; on failure nothing new is left.
ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                const std::string& normalized_dump,
                                std::ostream* log = nullptr);

// Writes plot_coverage.py into `dir` for the given CSV files.
std::filesystem::path write_plot_script(const std::filesystem::path& dir,
                                        const std::vector<std::filesystem::path>& csv_files);

}  // namespace gossipsim
