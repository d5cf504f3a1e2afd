#include "crw/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <stdexcept>

#include "crw/boost_dp.hpp"

namespace crw {

StrategyTable greedy_toward_table(const Graph& g, int target) {
  if (target < 0 || target >= g.order())
    throw std::invalid_argument("greedy_toward: target out of range");
  if (!g.connected()) throw std::invalid_argument("greedy_toward: graph must be connected");
  auto parent = bfs_parents(g, target);
  std::vector<std::vector<std::vector<int>>> tiers(g.order());
  for (int v = 0; v < g.order(); ++v) {
    if (v == target) {
      tiers[v] = {{g.neighbors(v).begin(), g.neighbors(v).end()}};
      continue;
    }
    std::vector<int> rest;
    for (int w : g.neighbors(v))
      if (w != parent[v]) rest.push_back(w);
    tiers[v].push_back({parent[v]});
    if (!rest.empty()) tiers[v].push_back(std::move(rest));
  }
  return alpha_from_ordering(g, tiers);
}

Strategy greedy_toward(const Graph& g, int target) {
  auto parent = std::make_shared<std::vector<int>>(bfs_parents(g, target));
  return {"greedy", [parent] {
            return [parent](const WalkView& view, int a, int b, RngStream& rng) {
              if (a == b) return a;
              int f = (*parent)[view.vertex];
              if (a == f || b == f) return f;
              return rng.bernoulli(0.5) ? a : b;
            };
          }};
}

std::vector<double> distance_halving_weights(const Graph& g, int target) {
  auto dist = bfs_distances(g, target);
  std::vector<double> weights(g.size());
  for (int e = 0; e < g.size(); ++e) {
    auto [u, v] = g.edges()[e];
    weights[e] = std::ldexp(1.0, -std::min(dist[u], dist[v]));
  }
  return weights;
}

StrategyTable distance_halving_strategy(const Graph& g, int target) {
  if (!g.connected())
    throw std::invalid_argument("distance_halving_strategy: graph must be connected");
  return alpha_for_weighting(g, distance_halving_weights(g, target));
}

std::vector<double> transient_weights(const Graph& g, int root) {
  auto dist = bfs_distances(g, root);
  std::vector<double> weights(g.size());
  for (int e = 0; e < g.size(); ++e) {
    auto [u, v] = g.edges()[e];
    int exp = std::min(dist[u], dist[v]);
    if (exp > 1000) throw std::invalid_argument("transient_weights: weights overflow");
    weights[e] = std::ldexp(1.0, exp);
  }
  return weights;
}

namespace {

void require_tree(const Graph& t) {
  if (!t.connected() || t.size() != t.order() - 1)
    throw std::invalid_argument("expected a tree");
}

}  // namespace

StrategyTable tree_sigma_strategy(const Graph& tree, int root, int x, int y) {
  require_tree(tree);
  if (!tree.adjacent(x, y))
    throw std::invalid_argument("tree_sigma_strategy: xy must be a tree edge");
  auto toward_y = bfs_parents(tree, y);
  auto toward_r = bfs_parents(tree, root);
  std::vector<std::vector<std::vector<int>>> tiers(tree.order());
  for (int v = 0; v < tree.order(); ++v) {
    if (v == y) {
      tiers[v] = {{tree.neighbors(v).begin(), tree.neighbors(v).end()}};
      continue;
    }
    const int wy = toward_y[v];
    const int zr = (v == root) ? -1 : toward_r[v];
    std::vector<int> middle;
    for (int w : tree.neighbors(v))
      if (w != wy && w != zr) middle.push_back(w);
    tiers[v].push_back({wy});
    if (!middle.empty()) tiers[v].push_back(std::move(middle));
    if (zr != -1 && zr != wy) tiers[v].push_back({zr});
  }
  return alpha_from_ordering(tree, tiers);
}

std::vector<double> tree_edge_weights(const Graph& tree, int root, int x, int y) {
  require_tree(tree);
  if (!tree.adjacent(x, y))
    throw std::invalid_argument("tree_edge_weights: xy must be a tree edge");
  StrategyTable sigma = tree_sigma_strategy(tree, root, x, y);
  Eigen::MatrixXd P = transitions_from_alpha(tree, sigma).P;
  auto toward_y = bfs_parents(tree, y);

  std::vector<double> weights(tree.size(), 0.0);
  weights[tree.edge_index(x, y)] = 1.0;
  // walk the x-side outward from x; each vertex's up-edge (toward y) is
  // already weighted when its children are processed
  std::deque<int> queue{x};
  std::vector<char> seen(tree.order(), 0);
  seen[x] = 1;
  seen[y] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    const int up = toward_y[v];
    const double w_up = weights[tree.edge_index(v, up)];
    for (int t : tree.neighbors(v)) {
      if (t == up || seen[t]) continue;
      weights[tree.edge_index(v, t)] = w_up * P(v, t) / P(v, up);
      seen[t] = 1;
      queue.push_back(t);
    }
  }
  return weights;
}

// ---------------------------------------------------------------------------
// lattice strategies
// ---------------------------------------------------------------------------

namespace {

struct LatticeView {
  int k = 0, dims = 0;
  bool periodic = false;
  std::vector<long long> stride;

  int coord(int id, int dim) const {
    return static_cast<int>((id / stride[dim]) % k);
  }
  int axis_distance(int a, int b) const {
    int d = std::abs(a - b);
    return periodic ? std::min(d, k - d) : d;
  }
  // dimension in which two adjacent lattice vertices differ
  int move_dim(int from, int to) const {
    for (int i = dims - 1; i >= 0; --i)
      if (coord(from, i) != coord(to, i)) return i;
    return -1;
  }
};

LatticeView lattice_view(const Graph& g) {
  if (!g.has_lattice())
    throw std::invalid_argument("lattice strategy: graph lacks product structure metadata");
  LatticeView view;
  view.k = g.lattice().k;
  view.dims = g.lattice().dims;
  view.periodic = g.lattice().periodic;
  view.stride.resize(view.dims, 1);
  for (int i = 1; i < view.dims; ++i) view.stride[i] = view.stride[i - 1] * view.k;
  Graph expected = view.periodic ? gen_torus(view.k, view.dims)
                                 : gen_grid(view.k, view.dims);
  if (!(expected == g))
    throw std::invalid_argument("lattice strategy: adjacency does not match metadata");
  return view;
}

// -1 if a is preferred, +1 if b, 0 tie
int lattice_compare(const LatticeView& lat, int current, int target, int a, int b) {
  const int da = lat.move_dim(current, a);
  const int db = lat.move_dim(current, b);
  const bool a_in_d = lat.coord(current, da) != lat.coord(target, da);
  const bool b_in_d = lat.coord(current, db) != lat.coord(target, db);
  if (a_in_d != b_in_d) return a_in_d ? -1 : 1;
  if (!a_in_d) return 0;
  if (da != db) return da > db ? -1 : 1;
  const int ra = lat.axis_distance(lat.coord(a, da), lat.coord(target, da));
  const int rb = lat.axis_distance(lat.coord(b, db), lat.coord(target, db));
  if (ra != rb) return ra < rb ? -1 : 1;
  return 0;
}

int lattice_pick(const LatticeView& lat, int current, int target, int a, int b,
                 RngStream& rng) {
  if (a == b || current == target) {
    if (a == b) return a;
    return rng.bernoulli(0.5) ? a : b;
  }
  const int cmp = lattice_compare(lat, current, target, a, b);
  if (cmp < 0) return a;
  if (cmp > 0) return b;
  return rng.bernoulli(0.5) ? a : b;
}

std::vector<int> snake_order(const LatticeView& lat) {
  const long long n = lat.stride[lat.dims - 1] * lat.k;
  std::vector<int> order(n);
  for (long long m = 0; m < n; ++m) {
    long long rem = m;
    long long id = 0;
    int parity = 0;
    for (int i = lat.dims - 1; i >= 0; --i) {
      int c = static_cast<int>(rem / lat.stride[i]);
      rem %= lat.stride[i];
      int actual = parity ? lat.k - 1 - c : c;
      id += static_cast<long long>(actual) * lat.stride[i];
      parity ^= c & 1;
    }
    order[m] = static_cast<int>(id);
  }
  return order;
}

}  // namespace

Strategy torus_product_strategy(const Graph& g, int target) {
  if (target < 0 || target >= g.order())
    throw std::invalid_argument("torus_product_strategy: target out of range");
  auto lat = std::make_shared<LatticeView>(lattice_view(g));
  return {"torus-product", [lat, target] {
            return [lat, target](const WalkView& view, int a, int b, RngStream& rng) {
              return lattice_pick(*lat, view.vertex, target, a, b, rng);
            };
          }};
}

Strategy torus_cover_strategy(const Graph& g) {
  auto lat = std::make_shared<LatticeView>(lattice_view(g));
  auto tour = std::make_shared<std::vector<int>>(snake_order(*lat));
  return {"torus-cover", [lat, tour] {
            auto pointer = std::make_shared<size_t>(0);
            return [lat, tour, pointer](const WalkView& view, int a, int b,
                                        RngStream& rng) {
              size_t& idx = *pointer;
              while (idx < tour->size() && view.is_covered((*tour)[idx])) ++idx;
              if (idx == tour->size()) {
                if (a == b) return a;
                return rng.bernoulli(0.5) ? a : b;
              }
              return lattice_pick(*lat, view.vertex, (*tour)[idx], a, b, rng);
            };
          }};
}

// ---------------------------------------------------------------------------
// cover strategies
// ---------------------------------------------------------------------------

Strategy spanning_walk_cover(const Graph& g, int start) {
  if (start < 0 || start >= g.order())
    throw std::invalid_argument("spanning_walk_cover: start out of range");
  if (!g.connected())
    throw std::invalid_argument("spanning_walk_cover: graph must be connected");
  const int n = g.order();

  // DFS spanning tree Euler tour, truncated after the last first visit
  std::vector<std::vector<int>> children(n);
  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          children[v].push_back(w);
          stack.push_back(w);
        }
    }
  }
  auto tour = std::make_shared<std::vector<int>>();
  {
    struct Frame {
      int v;
      size_t child = 0;
    };
    std::vector<Frame> stack{{start}};
    tour->push_back(start);
    while (!stack.empty()) {
      auto& frame = stack.back();
      if (frame.child < children[frame.v].size()) {
        int c = children[frame.v][frame.child++];
        tour->push_back(c);
        stack.push_back({c});
      } else {
        stack.pop_back();
        if (!stack.empty()) tour->push_back(stack.back().v);
      }
    }
    size_t last_new = 0;
    std::vector<char> seen(n, 0);
    for (size_t i = 0; i < tour->size(); ++i)
      if (!seen[(*tour)[i]]) {
        seen[(*tour)[i]] = 1;
        last_new = i;
      }
    tour->resize(last_new + 1);
  }

  auto parents = std::make_shared<std::vector<std::vector<int>>>(n);
  for (int v = 0; v < n; ++v) (*parents)[v] = bfs_parents(g, v);

  return {"spanning-walk", [tour, parents] {
            auto pointer = std::make_shared<size_t>(0);
            return [tour, parents, pointer](const WalkView& view, int a, int b,
                                            RngStream& rng) {
              size_t& idx = *pointer;
              while (idx < tour->size() && view.is_covered((*tour)[idx])) ++idx;
              if (a == b) return a;
              if (idx < tour->size()) {
                int waypoint = (*tour)[idx];
                if (view.vertex != waypoint) {
                  int f = (*parents)[waypoint][view.vertex];
                  if (a == f || b == f) return f;
                }
              }
              return rng.bernoulli(0.5) ? a : b;
            };
          }};
}

Strategy greedy_uncovered() {
  return {"greedy-uncovered", [] {
            return [](const WalkView& view, int a, int b, RngStream& rng) {
              if (a == b) return a;
              const bool ca = view.is_covered(a), cb = view.is_covered(b);
              if (ca != cb) return ca ? b : a;
              return rng.bernoulli(0.5) ? a : b;
            };
          }};
}

Strategy phased_boost_cover(const Graph& g, int start, double t_rel,
                            double t_hit_estimate, double C) {
  if (start < 0 || start >= g.order())
    throw std::invalid_argument("phased_boost_cover: start out of range");
  if (!g.connected())
    throw std::invalid_argument("phased_boost_cover: graph must be connected");
  if (t_rel <= 0.0) throw std::invalid_argument("phased_boost_cover: t_rel must be positive");
  const int n = g.order();
  const double log_n = std::log(std::max(2, n));
  const int threshold =
      std::max(1, static_cast<int>(std::floor(n / std::pow(log_n, C))));
  const long long window =
      std::max<long long>(1, static_cast<long long>(std::ceil(4.0 * t_rel * log_n)));
  const long long phase1_cap =
      t_hit_estimate > 0.0
          ? static_cast<long long>(std::ceil(20.0 * C * t_hit_estimate *
                                             std::max(1.0, std::log(log_n))))
          : std::numeric_limits<long long>::max();
  auto graph = std::make_shared<Graph>(g);

  return {"phased-boost", [graph, threshold, window, phase1_cap] {
            struct State {
              std::vector<std::vector<double>> layers;
              int built_covered_count = -1;
              long long attempt_start = 0;
            };
            auto state = std::make_shared<State>();
            return [graph, threshold, window, phase1_cap, state](
                       const WalkView& view, int a, int b, RngStream& rng) {
              const int uncovered = view.uncovered_count();
              if (uncovered == 0 || (uncovered > threshold && view.time < phase1_cap)) {
                if (a == b) return a;
                return rng.bernoulli(0.5) ? a : b;
              }
              if (view.covered_count != state->built_covered_count) {
                std::vector<int> s;
                for (int v = 0; v < view.n; ++v)
                  if (!view.is_covered(v)) s.push_back(v);
                state->layers = event_dp_layers(
                    *graph, EventSpec::hit_by(std::move(s), window), ChoiceMode::Max);
                state->built_covered_count = view.covered_count;
                state->attempt_start = view.time;
              }
              long long remaining = window - (view.time - state->attempt_start);
              if (remaining <= 0) {
                state->attempt_start = view.time;
                remaining = window;
              }
              if (a == b) return a;
              const auto& layer = state->layers[remaining - 1];
              if (layer[a] == layer[b]) return std::min(a, b);
              return layer[a] > layer[b] ? a : b;
            };
          }};
}

}  // namespace crw
