#include "gossipsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gossipsim/error.hpp"

namespace gossipsim {

namespace {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& text, std::size_t line, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

std::string py_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

double coverage(const EpochResult& result, std::size_t honest_count) {
  if (honest_count == 0) throw MetricError("coverage undefined without honest nodes");
  if (result.reached.size() > honest_count) {
    throw MetricError("reached set larger than the honest population");
  }
  return static_cast<double>(result.reached.size()) / static_cast<double>(honest_count);
}

CoveragePoint aggregate(std::span<const EpochResult> results, std::size_t honest_count) {
  if (results.empty()) throw MetricError("cannot aggregate an empty epoch list");
  std::vector<double> values;
  values.reserve(results.size());
  for (const auto& r : results) values.push_back(coverage(r, honest_count));

  CoveragePoint p;
  p.epoch_count = values.size();
  p.honest_count = honest_count;
  double sum = 0.0;
  for (double v : values) sum += v;
  p.mean_coverage = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - p.mean_coverage) * (v - p.mean_coverage);
  p.std_dev = std::sqrt(sq / static_cast<double>(values.size()));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  p.min = *lo;
  p.max = *hi;
  // Summation rounding must not push the mean outside [min, max].
  p.mean_coverage = std::clamp(p.mean_coverage, p.min, p.max);
  return p;
}

void write_csv(const SweepResult& sweep, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& p : sweep.points) {
    out << sweep.protocol << ',' << sweep.topology << ',' << fixed6(p.attacker_fraction)
        << ',' << fixed6(p.mean_coverage) << ',' << fixed6(p.std_dev) << ','
        << fixed6(p.min) << ',' << fixed6(p.max) << ',' << p.epoch_count << ','
        << sweep.seed << '\n';
  }
  if (!out) throw IoError("failed writing CSV");
}

std::vector<SweepResult> read_csv(std::istream& in) {
  std::vector<SweepResult> sweeps;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return sweeps;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(line_no, "unexpected CSV header");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw ParseError(line_no, "expected 9 fields");
    CoveragePoint p;
    p.attacker_fraction = parse_number<double>(f[2], line_no, "fraction");
    p.mean_coverage = parse_number<double>(f[3], line_no, "mean_coverage");
    p.std_dev = parse_number<double>(f[4], line_no, "std_dev");
    p.min = parse_number<double>(f[5], line_no, "min");
    p.max = parse_number<double>(f[6], line_no, "max");
    p.epoch_count = parse_number<std::size_t>(f[7], line_no, "epochs");
    const auto seed = parse_number<std::uint64_t>(f[8], line_no, "seed");
    if (sweeps.empty() || sweeps.back().protocol != f[0] ||
        sweeps.back().topology != f[1] || sweeps.back().seed != seed) {
      sweeps.push_back(SweepResult{f[0], f[1], {}, 0, seed});
    }
    sweeps.back().points.push_back(p);
  }
  return sweeps;
}

void emit_plot_script(std::span<const SweepResult> sweeps,
                      std::span<const std::string> csv_paths, std::ostream& out) {
  if (sweeps.empty()) throw MetricError("no sweeps to plot");
  if (sweeps.size() != csv_paths.size()) {
    throw MetricError("one CSV path is needed per sweep");
  }
  auto grid = [](const SweepResult& s) {
    std::vector<double> g;
    for (const auto& p : s.points) g.push_back(p.attacker_fraction);
    return g;
  };
  const auto reference_grid = grid(sweeps.front());
  for (const auto& s : sweeps) {
    if (grid(s) != reference_grid) {
      throw MetricError("sweep '" + s.protocol + "' on '" + s.topology +
                        "' uses a different fraction grid");
    }
  }

  // Preserve first-appearance order of topologies.
  std::vector<std::string> topologies;
  for (const auto& s : sweeps) {
    if (std::find(topologies.begin(), topologies.end(), s.topology) == topologies.end()) {
      topologies.push_back(s.topology);
    }
  }

  out << "#!/usr/bin/env python3\n"
         "\"\"\"Coverage vs. attacker percentage, one figure per topology.\n"
         "\n"
         "Generated by gossipsim. Run from any directory; CSV paths are\n"
         "resolved relative to this file. Pass --bands to shade min/max.\n"
         "\"\"\"\n"
         "import csv\n"
         "import os\n"
         "import sys\n"
         "\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "HERE = os.path.dirname(os.path.abspath(__file__))\n"
         "LABELS = {\n"
         "    'broadcast': 'Broadcast',\n"
         "    'fixed_probability': 'Fixed Probability (FP)',\n"
         "    'probabilistic_broadcast': 'Probabilistic Broadcast (PB)',\n"
         "    'dandelion': 'Dandelion',\n"
         "    'dandelion_pp': 'Dandelion++',\n"
         "}\n"
         "\n"
         "# (topology, protocol, csv path)\n"
         "SERIES = [\n";
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    out << "    (" << py_quote(sweeps[i].topology) << ", " << py_quote(sweeps[i].protocol)
        << ", " << py_quote(csv_paths[i]) << "),\n";
  }
  out << "]\n"
         "FIGURES = [";
  for (std::size_t i = 0; i < topologies.size(); ++i) {
    out << (i ? ", " : "") << py_quote(topologies[i]);
  }
  out << "]\n"
         "\n"
         "\n"
         "def load(path, protocol, topology):\n"
         "    xs, mean, lo, hi = [], [], [], []\n"
         "    with open(os.path.join(HERE, path), newline='') as f:\n"
         "        for row in csv.DictReader(f):\n"
         "            if row['protocol'] != protocol or row['topology'] != topology:\n"
         "                continue\n"
         "            xs.append(100.0 * float(row['fraction']))\n"
         "            mean.append(100.0 * float(row['mean_coverage']))\n"
         "            lo.append(100.0 * float(row['min']))\n"
         "            hi.append(100.0 * float(row['max']))\n"
         "    return xs, mean, lo, hi\n"
         "\n"
         "\n"
         "def main(argv):\n"
         "    bands = '--bands' in argv\n"
         "    outputs = []\n"
         "    for topology in FIGURES:\n"
         "        fig, ax = plt.subplots(figsize=(7, 4.5))\n"
         "        for topo, protocol, path in SERIES:\n"
         "            if topo != topology:\n"
         "                continue\n"
         "            xs, mean, lo, hi = load(path, protocol, topology)\n"
         "            line, = ax.plot(xs, mean, marker='.', label=LABELS.get(protocol, protocol))\n"
         "            if bands:\n"
         "                ax.fill_between(xs, lo, hi, color=line.get_color(), alpha=0.15)\n"
         "        ax.set_xlim(1, 99)\n"
         "        ax.set_ylim(0, 100)\n"
         "        ax.set_xlabel('% malicious nodes')\n"
         "        ax.set_ylabel('% honest nodes reached')\n"
         "        ax.set_title('Coverage, ' + topology)\n"
         "        ax.grid(True, alpha=0.3)\n"
         "        ax.legend()\n"
         "        name = os.path.join(HERE, 'coverage_' + topology + '.png')\n"
         "        fig.savefig(name, dpi=120, bbox_inches='tight')\n"
         "        plt.close(fig)\n"
         "        outputs.append(name)\n"
         "    for name in outputs:\n"
         "        print(name)\n"
         "    return 0\n"
         "\n"
         "\n"
         "if __name__ == '__main__':\n"
         "    sys.exit(main(sys.argv[1:]))\n";
  if (!out) throw IoError("failed writing plot script");
}

}  // namespace gossipsim
