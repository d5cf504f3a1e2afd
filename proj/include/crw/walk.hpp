#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "crw/graph.hpp"
#include "crw/rng.hpp"
#include "crw/strategy_table.hpp"

namespace crw {

/// Snapshot handed to decision rules and stop predicates. Strategies in this
/// library depend on at most (time, position, covered set); full-history
/// strategies are out of scope.
struct WalkView {
  long long time = 0;  // steps taken so far
  int vertex = 0;
  const std::vector<char>* covered = nullptr;  // size n, 1 = visited
  int covered_count = 0;
  int n = 0;

  int uncovered_count() const { return n - covered_count; }
  bool is_covered(int v) const { return (*covered)[v] != 0; }
};

/// Picks one of the two offered neighbours (a == b is possible and must be
/// accepted). May consume extra randomness for randomized strategies.
using DecisionFn = std::function<int(const WalkView&, int a, int b, RngStream&)>;
using StopFn = std::function<bool(const WalkView&)>;

/// A named strategy. instantiate() produces a fresh decision rule per
/// trajectory; rules may keep per-walk mutable state (attempt clocks,
/// waypoint pointers) while all shared precomputed data stays immutable,
/// so parallel trajectories each call instantiate() once.
struct Strategy {
  std::string name;
  std::function<DecisionFn()> instantiate;
};

struct Trajectory {
  std::vector<int> vertices;                  // X_0 .. X_t
  std::vector<std::pair<int, int>> offers;    // optional: pair offered per step
  bool truncated = false;
  long long steps() const { return static_cast<long long>(vertices.size()) - 1; }
};

/// One CRW step: sample two neighbours of view.vertex independently with
/// replacement, let the rule pick. Returns the next vertex.
int step(const Graph& g, const DecisionFn& rule, const WalkView& view, RngStream& rng);

/// Run a walk from start until stop(view) holds (checked on arrival,
/// including at the start) or cap steps were taken (reported via truncated).
Trajectory simulate(const Graph& g, const DecisionFn& rule, int start,
                    const StopFn& stop, long long cap, RngStream& rng,
                    bool record_offers = false);

Strategy srw_strategy();
/// Randomized strategy drawn from an alpha-table (shared, immutable).
Strategy table_strategy(const Graph& g, StrategyTable table);

StopFn stop_when_hit(std::vector<int> targets);
StopFn stop_when_covered();

}  // namespace crw
