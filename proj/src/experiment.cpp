#include "gossipsim/experiment.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "gossipsim/error.hpp"
#include "gossipsim/presets.hpp"
#include "gossipsim/sweep.hpp"
#include "gossipsim/topology.hpp"

namespace gossipsim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPlotScript = "plot_coverage.py";
constexpr const char* kConfigDump = "config.cfg";

// Files written under a temporary name and renamed together on commit.
class StagedFiles {
 public:
  explicit StagedFiles(fs::path dir) : dir_(std::move(dir)) {}
  StagedFiles(const StagedFiles&) = delete;
  StagedFiles& operator=(const StagedFiles&) = delete;

  ~StagedFiles() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [tmp, final_path] : staged_) fs::remove(tmp, ec);
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path final_path = dir_ / name;
    fs::path tmp = final_path;
    tmp += ".partial";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    staged_.emplace_back(tmp, final_path);
    out << content;
    out.close();
    if (!out) throw IoError("failed writing " + tmp.string());
  }

  std::vector<fs::path> commit() {
    std::vector<fs::path> done;
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      fs::rename(tmp, final_path, ec);
      if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
      done.push_back(final_path);
    }
    committed_ = true;
    return done;
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> staged_;
  bool committed_ = false;
};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

}  // namespace

std::string load_config_text(const std::string& path_or_preset) {
  std::ifstream in(path_or_preset, std::ios::binary);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  if (const Preset* p = find_preset(fs::path(path_or_preset).filename().string())) {
    return std::string(p->text);
  }
  throw IoError("config '" + path_or_preset + "' is neither a readable file nor a bundled preset");
}

BuiltGraph build_graph(const ExperimentConfig& cfg) {
  if (cfg.edge_list) {
    std::ifstream in(*cfg.edge_list);
    if (!in) throw IoError("cannot open edge list '" + *cfg.edge_list + "'");
    Graph g = load_edge_list(in);
    if (!is_connected(g)) throw ConstraintError("connected (loaded edge list)", 1);
    auto label = describe("edgelist", g);
    return BuiltGraph{std::move(g), std::move(label), 0};
  }
  const TopologySpec spec = resolved_topology(cfg);
  auto generated = generate_with_constraints(spec);
  return BuiltGraph{std::move(generated.graph), describe(spec), generated.retries};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                const std::string& normalized_dump, std::ostream* log) {
  const fs::path dir(cfg.output_dir);
  ensure_directory(dir);

  const BuiltGraph built = build_graph(cfg);
  if (log) {
    *log << "graph " << built.label << " (retries " << built.retries << ")\n";
  }

  ExperimentReport report;
  StagedFiles staged(dir);
  std::vector<std::string> csv_names;
  for (auto kind : cfg.protocols) {
    const ProtocolConfig pcfg = protocol_config(cfg, kind);
    SweepResult sweep = run_sweep(built.graph, built.label, pcfg, cfg.run, cfg.fractions, cfg.threads);
    sweep.fingerprint = fingerprint(cfg);
    std::ostringstream csv;
    write_csv(sweep, csv);
    const std::string name = std::string(to_string(kind)) + ".csv";
    staged.write(name, csv.str());
    csv_names.push_back(name);
    if (log) *log << "sweep " << sweep.protocol << ": " << sweep.points.size() << " points\n";
    report.sweeps.push_back(std::move(sweep));
  }

  std::ostringstream script;
  emit_plot_script(report.sweeps, csv_names, script);
  staged.write(kPlotScript, script.str());
  staged.write(kConfigDump, normalized_dump);
  report.files = staged.commit();
  return report;
}

fs::path write_plot_script(const fs::path& dir, const std::vector<fs::path>& csv_files) {
  std::vector<SweepResult> sweeps;
  std::vector<std::string> paths;
  for (const auto& file : csv_files) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    for (auto& s : read_csv(in)) {
      sweeps.push_back(std::move(s));
      paths.push_back(fs::relative(fs::absolute(file), fs::absolute(dir)).generic_string());
    }
  }
  std::ostringstream script;
  emit_plot_script(sweeps, paths, script);
  StagedFiles staged(dir);
  staged.write(kPlotScript, script.str());
  return staged.commit().front();
}

}  // namespace gossipsim
