#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gossipsim/engine.hpp"

namespace gossipsim {

struct CoveragePoint {
  double attacker_fraction = 0.0;
  double mean_coverage = 0.0;
  double std_dev = 0.0;  // population
  std::size_t epoch_count = 0;
  double min = 0.0;
  double max = 0.0;
  std::size_t honest_count = 0;
  std::size_t sybil_count = 0;
};

struct SweepResult {
  std::string protocol;
  std::string topology;
  std::vector<CoveragePoint> points;  // strictly increasing fraction
  std::uint64_t fingerprint = 0;
  std::uint64_t seed = 0;
};

// |reached| / honest_count. Throws MetricError when honest_count is 0 or
// smaller than the reached set.
double coverage(const EpochResult& result, std::size_t honest_count);

// Mean, population standard deviation, min and max of per-epoch coverage.
CoveragePoint aggregate(std::span<const EpochResult> results, std::size_t honest_count);

inline constexpr const char* kCsvHeader =
    "protocol,topology,fraction,mean_coverage,std_dev,min,max,epochs,seed";

void write_csv(const SweepResult& sweep, std::ostream& out);

// Reads rows written by write_csv, grouping consecutive rows with the same
// protocol, topology and seed into one SweepResult.
std::vector<SweepResult> read_csv(std::istream& in);

// Python/matplotlib script that plots coverage against attacker percentage,
// one figure per topology and one curve per protocol. csv_paths[i] is the
// path of sweeps[i]'s CSV relative to the script. Throws MetricError if the
// list is empty, the sizes differ or the fraction grids disagree.
void emit_plot_script(std::span<const SweepResult> sweeps,
                      std::span<const std::string> csv_paths, std::ostream& out);

}  // namespace gossipsim
