#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "crw/graph.hpp"
#include "crw/walk.hpp"

namespace crw {

struct TrialConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  long long step_cap = 0;  // <= 0: automatic, 50 * n * (ceil(ln n) + 1)
  int threads = 1;
  bool worst_case_start = false;  // sweep all starts, report the worst mean
};

/// Trial i always draws from RngStream(seed, i), so results are independent
/// of the parallel schedule. Truncated trajectories enter the mean at the
/// cap value and are counted, never silently dropped.
struct EstimateReport {
  double mean = 0.0;
  double sd = 0.0;
  double ci_lo = 0.0;  // 95% normal interval
  double ci_hi = 0.0;
  int trials = 0;
  int truncated = 0;
};

EstimateReport estimate_cover(const Graph& g, const Strategy& strategy, int start,
                              const TrialConfig& config);
EstimateReport estimate_hitting(const Graph& g, const Strategy& strategy, int start,
                                const std::vector<int>& targets,
                                const TrialConfig& config);

/// Mean number of unvisited vertices at each requested time.
std::vector<double> unvisited_profile(const Graph& g, const Strategy& strategy,
                                      int start, const std::vector<long long>& times,
                                      const TrialConfig& config);

struct BenchRow {
  std::string family;
  int n = 0;
  std::string strategy;
  std::string metric;  // "cover" or "hit"
  double mean = 0.0, ci_lo = 0.0, ci_hi = 0.0;
  double exact = std::numeric_limits<double>::quiet_NaN();  // optimal value where n permits
};

struct BenchSpec {
  std::vector<std::string> families;   // complete cycle path torus2d grid2d
                                       // tree3 tree4 regular3 gnp subcubic
  std::vector<int> sizes;              // n, or the side k for torus2d/grid2d
  std::vector<std::string> strategies; // srw greedy-uncovered spanning torus-cover
                                       // phased-boost greedy distance-halving
                                       // torus-product optimal
  TrialConfig config;
};

/// Cover and hitting estimates for every applicable (family, size, strategy)
/// combination; inapplicable combinations are skipped.
std::vector<BenchRow> compare_table(const BenchSpec& spec);

/// Preset sweep mirroring the headline hitting/cover comparisons.
BenchSpec table1_spec();

Graph bench_graph(const std::string& family, int size, std::uint64_t seed);

void write_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace crw
