#include "crw/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "crw/exact.hpp"
#include "crw/strategies.hpp"

namespace crw {

namespace {

long long auto_cap(const Graph& g, const TrialConfig& config) {
  if (config.step_cap > 0) return config.step_cap;
  const double log_n = std::log(std::max(2, g.order()));
  return 50LL * g.order() * (static_cast<long long>(std::ceil(log_n)) + 1);
}

struct TrialOutcome {
  double steps = 0.0;
  bool truncated = false;
};

template <class RunTrial>
std::vector<TrialOutcome> run_trials(int trials, int threads, RunTrial&& run) {
  std::vector<TrialOutcome> results(trials);
  threads = std::clamp(threads, 1, trials);
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) results[i] = run(i);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < trials; i += threads) results[i] = run(i);
    });
  for (auto& worker : pool) worker.join();
  return results;
}

EstimateReport summarize(const std::vector<TrialOutcome>& outcomes) {
  EstimateReport report;
  report.trials = static_cast<int>(outcomes.size());
  double sum = 0.0, sumsq = 0.0;
  for (const auto& o : outcomes) {  // fixed trial order for bit-stable output
    sum += o.steps;
    sumsq += o.steps * o.steps;
    report.truncated += o.truncated ? 1 : 0;
  }
  const double n = static_cast<double>(report.trials);
  report.mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sumsq - sum * sum / n) / (n - 1)) : 0.0;
  report.sd = std::sqrt(var);
  const double half = 1.959963984540054 * report.sd / std::sqrt(n);
  report.ci_lo = report.mean - half;
  report.ci_hi = report.mean + half;
  return report;
}

EstimateReport estimate_stop(const Graph& g, const Strategy& strategy, int start,
                             const StopFn& stop, const TrialConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("estimate: trials >= 1 required");
  const long long cap = auto_cap(g, config);
  auto outcomes = run_trials(config.trials, config.threads, [&](int trial) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(trial));
    DecisionFn rule = strategy.instantiate();
    Trajectory traj = simulate(g, rule, start, stop, cap, rng);
    return TrialOutcome{static_cast<double>(traj.steps()), traj.truncated};
  });
  EstimateReport report = summarize(outcomes);
  if (report.truncated == report.trials)
    throw std::runtime_error("estimate: all trials truncated at the step cap");
  return report;
}

EstimateReport worst_over_starts(const Graph& g,
                                 const std::function<EstimateReport(int)>& per_start) {
  EstimateReport worst;
  bool first = true;
  for (int v = 0; v < g.order(); ++v) {
    EstimateReport r = per_start(v);
    if (first || r.mean > worst.mean) {
      worst = r;
      first = false;
    }
  }
  return worst;
}

}  // namespace

EstimateReport estimate_cover(const Graph& g, const Strategy& strategy, int start,
                              const TrialConfig& config) {
  if (config.worst_case_start) {
    TrialConfig fixed = config;
    fixed.worst_case_start = false;
    return worst_over_starts(
        g, [&](int v) { return estimate_cover(g, strategy, v, fixed); });
  }
  return estimate_stop(g, strategy, start, stop_when_covered(), config);
}

EstimateReport estimate_hitting(const Graph& g, const Strategy& strategy, int start,
                                const std::vector<int>& targets,
                                const TrialConfig& config) {
  if (config.worst_case_start) {
    TrialConfig fixed = config;
    fixed.worst_case_start = false;
    return worst_over_starts(
        g, [&](int v) { return estimate_hitting(g, strategy, v, targets, fixed); });
  }
  return estimate_stop(g, strategy, start, stop_when_hit(targets), config);
}

std::vector<double> unvisited_profile(const Graph& g, const Strategy& strategy,
                                      int start, const std::vector<long long>& times,
                                      const TrialConfig& config) {
  if (times.empty()) return {};
  std::vector<long long> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());
  const long long horizon = sorted_times.back();

  std::vector<std::vector<double>> per_trial(config.trials);
  auto outcomes = run_trials(config.trials, config.threads, [&](int trial) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(trial));
    DecisionFn rule = strategy.instantiate();
    std::vector<char> covered(g.order(), 0);
    covered[start] = 1;
    WalkView view{0, start, &covered, 1, g.order()};
    std::vector<double> counts;
    counts.reserve(sorted_times.size());
    size_t next_time = 0;
    while (true) {
      while (next_time < sorted_times.size() && view.time == sorted_times[next_time]) {
        counts.push_back(static_cast<double>(view.uncovered_count()));
        ++next_time;
      }
      if (view.time >= horizon) break;
      int next = step(g, rule, view, rng);
      if (!covered[next]) {
        covered[next] = 1;
        ++view.covered_count;
      }
      view.vertex = next;
      ++view.time;
    }
    per_trial[trial] = std::move(counts);
    return TrialOutcome{};
  });
  (void)outcomes;

  std::vector<double> mean(sorted_times.size(), 0.0);
  for (const auto& counts : per_trial)
    for (size_t i = 0; i < counts.size(); ++i) mean[i] += counts[i];
  for (auto& m : mean) m /= static_cast<double>(config.trials);

  // undo the sort: report in the caller's order
  std::vector<double> out(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    auto it = std::lower_bound(sorted_times.begin(), sorted_times.end(), times[i]);
    out[i] = mean[it - sorted_times.begin()];
  }
  return out;
}

// ---------------------------------------------------------------------------
// benchmark sweeps
// ---------------------------------------------------------------------------

Graph bench_graph(const std::string& family, int size, std::uint64_t seed) {
  if (family == "complete") return gen_complete(size);
  if (family == "cycle") return gen_cycle(size);
  if (family == "path") return gen_path(size);
  if (family == "torus2d") return gen_torus(size, 2);
  if (family == "grid2d") return gen_grid(size, 2);
  if (family == "tree3") return gen_random_tree(size, 3, seed);
  if (family == "tree4") return gen_random_tree(size, 4, seed);
  if (family == "regular3") return gen_random_regular(size, 3, seed);
  if (family == "gnp") {
    double p = std::min(1.0, 2.0 * std::log(std::max(2, size)) / size);
    return gen_gnp(size, p, seed);
  }
  if (family == "subcubic") return gen_random_subcubic(size, size / 4, seed);
  throw std::invalid_argument("unknown graph family: " + family);
}

namespace {

int farthest_vertex(const Graph& g, int from) {
  auto dist = bfs_distances(g, from);
  return static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

bool strategy_is_cover(const std::string& name) {
  return name == "srw" || name == "greedy-uncovered" || name == "spanning" ||
         name == "torus-cover" || name == "phased-boost";
}

bool strategy_is_hit(const std::string& name) {
  return name == "srw" || name == "greedy" || name == "distance-halving" ||
         name == "torus-product" || name == "optimal";
}

}  // namespace

std::vector<BenchRow> compare_table(const BenchSpec& spec) {
  std::vector<BenchRow> rows;
  for (const auto& family : spec.families) {
    for (int size : spec.sizes) {
      Graph g;
      try {
        g = bench_graph(family, size, spec.config.seed);
      } catch (const std::invalid_argument&) {
        continue;  // size not valid for this family
      }
      const int n = g.order();
      const int target = 0;
      const int start = farthest_vertex(g, target);

      double exact_hit = std::numeric_limits<double>::quiet_NaN();
      double exact_cover = std::numeric_limits<double>::quiet_NaN();
      if (n <= 1200) exact_hit = optimal_hitting(g, {target}).h[start];
      if (n <= 14) exact_cover = cover_mdp(g, start).optimal_cover();

      double t_rel = 0.0;
      for (const auto& name : spec.strategies) {
        if (strategy_is_cover(name)) {
          Strategy s;
          try {
            if (name == "srw") s = srw_strategy();
            else if (name == "greedy-uncovered") s = greedy_uncovered();
            else if (name == "spanning") s = spanning_walk_cover(g, start);
            else if (name == "torus-cover") s = torus_cover_strategy(g);
            else {
              if (t_rel == 0.0) t_rel = spectral(g).t_rel;
              s = phased_boost_cover(g, start, t_rel);
            }
          } catch (const std::invalid_argument&) {
            s.name.clear();
          }
          if (!s.name.empty()) {
            EstimateReport r = estimate_cover(g, s, start, spec.config);
            rows.push_back({family, n, name, "cover", r.mean, r.ci_lo, r.ci_hi,
                            exact_cover});
          }
        }
        if (strategy_is_hit(name)) {
          Strategy s;
          try {
            if (name == "srw") s = srw_strategy();
            else if (name == "greedy") s = greedy_toward(g, target);
            else if (name == "distance-halving")
              s = table_strategy(g, distance_halving_strategy(g, target));
            else if (name == "torus-product") s = torus_product_strategy(g, target);
            else if (n <= 1200)
              s = table_strategy(g, optimal_hitting(g, {target}).strategy);
          } catch (const std::invalid_argument&) {
            s.name.clear();
          }
          if (!s.name.empty()) {
            EstimateReport r = estimate_hitting(g, s, start, {target}, spec.config);
            rows.push_back({family, n, name, "hit", r.mean, r.ci_lo, r.ci_hi, exact_hit});
          }
        }
      }
    }
  }
  return rows;
}

BenchSpec table1_spec() {
  BenchSpec spec;
  spec.families = {"complete", "torus2d", "tree3", "regular3", "subcubic"};
  spec.sizes = {64, 144, 256};
  spec.strategies = {"srw", "greedy-uncovered", "spanning", "torus-cover",
                     "torus-product", "greedy", "optimal", "phased-boost"};
  spec.config.trials = 100;
  return spec;
}

void write_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "family,n,strategy,metric,mean,ci_lo,ci_hi,exact\n";
  for (const auto& row : rows) {
    out << row.family << ',' << row.n << ',' << row.strategy << ',' << row.metric
        << ',' << row.mean << ',' << row.ci_lo << ',' << row.ci_hi << ',';
    if (!std::isnan(row.exact)) out << row.exact;
    out << '\n';
  }
}

}  // namespace crw
