#include "crw/walk.hpp"

#include <algorithm>
#include <stdexcept>

namespace crw {

int step(const Graph& g, const DecisionFn& rule, const WalkView& view, RngStream& rng) {
  auto nb = g.neighbors(view.vertex);
  const int d = static_cast<int>(nb.size());
  if (d == 0) throw std::invalid_argument("step: isolated vertex");
  int a = nb[rng.uniform_below(d)];
  int b = nb[rng.uniform_below(d)];
  int next = rule(view, a, b, rng);
  if (next != a && next != b)
    throw std::logic_error("step: rule returned a vertex outside the offered pair");
  return next;
}

Trajectory simulate(const Graph& g, const DecisionFn& rule, int start,
                    const StopFn& stop, long long cap, RngStream& rng,
                    bool record_offers) {
  if (start < 0 || start >= g.order())
    throw std::invalid_argument("simulate: start out of range");
  if (cap <= 0) throw std::invalid_argument("simulate: cap must be positive");

  Trajectory traj;
  std::vector<char> covered(g.order(), 0);
  covered[start] = 1;
  WalkView view{0, start, &covered, 1, g.order()};
  traj.vertices.push_back(start);

  while (!stop(view)) {
    if (view.time >= cap) {
      traj.truncated = true;
      break;
    }
    auto nb = g.neighbors(view.vertex);
    const int d = static_cast<int>(nb.size());
    int a = nb[rng.uniform_below(d)];
    int b = nb[rng.uniform_below(d)];
    int next = rule(view, a, b, rng);
    if (next != a && next != b)
      throw std::logic_error("simulate: rule returned a vertex outside the offered pair");
    if (record_offers) traj.offers.emplace_back(a, b);
    if (!covered[next]) {
      covered[next] = 1;
      ++view.covered_count;
    }
    view.vertex = next;
    ++view.time;
    traj.vertices.push_back(next);
  }
  return traj;
}

Strategy srw_strategy() {
  return {"srw", [] {
            return [](const WalkView&, int a, int b, RngStream& rng) {
              if (a == b) return a;
              return rng.bernoulli(0.5) ? a : b;
            };
          }};
}

Strategy table_strategy(const Graph& g, StrategyTable table) {
  if (!table.matches(g))
    throw std::invalid_argument("table_strategy: table does not match graph");
  auto shared = std::make_shared<StrategyTable>(std::move(table));
  return {"table", [shared] {
            return [shared](const WalkView& view, int a, int b, RngStream& rng) {
              if (a == b) return a;
              return rng.bernoulli(shared->alpha(view.vertex, a, b)) ? a : b;
            };
          }};
}

StopFn stop_when_hit(std::vector<int> targets) {
  auto mask = std::make_shared<std::vector<char>>();
  auto list = std::make_shared<std::vector<int>>(std::move(targets));
  return [mask, list](const WalkView& view) {
    if (mask->empty()) {
      mask->assign(view.n, 0);
      for (int t : *list) (*mask)[t] = 1;
    }
    return (*mask)[view.vertex] != 0;
  };
}

StopFn stop_when_covered() {
  return [](const WalkView& view) { return view.covered_count == view.n; };
}

}  // namespace crw
