#include <gtest/gtest.h>

#include <sstream>

#include "gossipsim/error.hpp"
#include "gossipsim/metrics.hpp"

using namespace gossipsim;

namespace {

EpochResult epoch(std::size_t reached) {
  EpochResult r;
  for (std::size_t i = 0; i < reached; ++i) r.reached.push_back(static_cast<NodeId>(i));
  return r;
}

SweepResult sweep(const std::string& protocol, std::vector<double> fractions) {
  SweepResult s;
  s.protocol = protocol;
  s.topology = "random-n10000-m40000";
  s.seed = 2021;
  for (double f : fractions) {
    CoveragePoint p;
    p.attacker_fraction = f;
    p.mean_coverage = 1.0 - f;
    p.std_dev = 0.01;
    p.min = 0.9 - f;
    p.max = 1.0;
    p.epoch_count = 312;
    s.points.push_back(p);
  }
  return s;
}

std::vector<double> grid99() {
  std::vector<double> f;
  for (int i = 1; i <= 99; ++i) f.push_back(i / 100.0);
  return f;
}

}  // namespace

TEST(Coverage, Ratio) {
  EXPECT_DOUBLE_EQ(coverage(epoch(100), 5000), 0.02);
  EXPECT_THROW(coverage(epoch(1), 0), MetricError);
  EXPECT_THROW(coverage(epoch(6), 5), MetricError);
}

TEST(Aggregate, ConstantSamples) {
  const std::vector<EpochResult> rs{epoch(4), epoch(4), epoch(4)};
  const auto p = aggregate(rs, 4);
  EXPECT_DOUBLE_EQ(p.mean_coverage, 1.0);
  EXPECT_DOUBLE_EQ(p.std_dev, 0.0);
  EXPECT_EQ(p.epoch_count, 3u);
}

TEST(Aggregate, PopulationStdDev) {
  const std::vector<EpochResult> rs{epoch(0), epoch(2)};
  const auto p = aggregate(rs, 2);
  EXPECT_DOUBLE_EQ(p.mean_coverage, 0.5);
  EXPECT_DOUBLE_EQ(p.std_dev, 0.5);
  EXPECT_DOUBLE_EQ(p.min, 0.0);
  EXPECT_DOUBLE_EQ(p.max, 1.0);
}

TEST(Aggregate, BoundsHold) {
  std::vector<EpochResult> rs;
  for (std::size_t i = 0; i < 37; ++i) rs.push_back(epoch((i * 7) % 11));
  const auto p = aggregate(rs, 11);
  EXPECT_LE(p.min, p.mean_coverage);
  EXPECT_LE(p.mean_coverage, p.max);
  EXPECT_GE(p.std_dev, 0.0);
  EXPECT_THROW(aggregate(std::span<const EpochResult>{}, 11), MetricError);
}

TEST(Csv, RowFormat) {
  SweepResult s;
  s.protocol = "broadcast";
  s.topology = "random-n10000-m40000";
  s.seed = 2021;
  CoveragePoint p;
  p.attacker_fraction = 0.5;
  p.mean_coverage = 0.9;
  p.std_dev = 0.05;
  p.min = 0.7;
  p.max = 1.0;
  p.epoch_count = 312;
  s.points.push_back(p);
  std::ostringstream out;
  write_csv(s, out);
  EXPECT_EQ(out.str(), std::string(kCsvHeader) +
                           "\nbroadcast,random-n10000-m40000,0.500000,0.900000,0.050000,"
                           "0.700000,1.000000,312,2021\n");
}

TEST(Csv, NinetyNineRowsRoundTrip) {
  const auto s = sweep("fixed_probability", grid99());
  std::ostringstream out;
  write_csv(s, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 100);
  std::istringstream in(text);
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].protocol, "fixed_probability");
  EXPECT_EQ(back[0].topology, s.topology);
  EXPECT_EQ(back[0].seed, 2021u);
  ASSERT_EQ(back[0].points.size(), 99u);
  for (std::size_t i = 0; i < 99; ++i) {
    EXPECT_NEAR(back[0].points[i].attacker_fraction, s.points[i].attacker_fraction, 1e-6);
    EXPECT_NEAR(back[0].points[i].mean_coverage, s.points[i].mean_coverage, 1e-6);
    EXPECT_EQ(back[0].points[i].epoch_count, 312u);
  }
}

TEST(Csv, RejectsMalformed) {
  std::istringstream bad_header("nope\n");
  EXPECT_ANY_THROW(read_csv(bad_header));
  std::istringstream short_row(std::string(kCsvHeader) + "\nbroadcast,x,0.5\n");
  EXPECT_ANY_THROW(read_csv(short_row));
}

TEST(PlotScript, RejectsEmptyAndMismatched) {
  std::ostringstream out;
  EXPECT_THROW(emit_plot_script({}, {}, out), MetricError);
  const std::vector<SweepResult> two{sweep("broadcast", {0.1, 0.2}), sweep("dandelion", {0.1, 0.3})};
  const std::vector<std::string> paths{"a.csv", "b.csv"};
  EXPECT_THROW(emit_plot_script(two, paths, out), MetricError);
  const std::vector<std::string> one_path{"a.csv"};
  EXPECT_THROW(emit_plot_script(two, one_path, out), MetricError);
}

TEST(PlotScript, ThreeCurves) {
  const std::vector<SweepResult> three{sweep("dandelion", grid99()),
                                       sweep("fixed_probability", grid99()),
                                       sweep("probabilistic_broadcast", grid99())};
  const std::vector<std::string> paths{"dandelion.csv", "fixed_probability.csv",
                                       "probabilistic_broadcast.csv"};
  std::ostringstream out;
  emit_plot_script(three, paths, out);
  const std::string py = out.str();
  for (const auto& p : paths) EXPECT_NE(py.find(p), std::string::npos) << p;
  EXPECT_NE(py.find("matplotlib"), std::string::npos);
  EXPECT_NE(py.find("Fixed Probability (FP)"), std::string::npos);
}

TEST(PlotScript, SingleCurve) {
  const std::vector<SweepResult> one{sweep("broadcast", grid99())};
  const std::vector<std::string> paths{"broadcast.csv"};
  std::ostringstream out;
  EXPECT_NO_THROW(emit_plot_script(one, paths, out));
  EXPECT_NE(out.str().find("broadcast.csv"), std::string::npos);
}
