#include "crw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "crw/rng.hpp"

namespace crw {

namespace {

std::vector<char> component_mask(int n, const std::vector<std::vector<int>>& adj,
                                 int source) {
  std::vector<char> seen(n, 0);
  std::deque<int> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
  if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
  adj_.assign(n, {});
  edges_.reserve(edge_list.size());
  for (auto [u, v] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("Graph: vertex id out of range");
    if (u == v) throw std::invalid_argument("Graph: self-loop in simple graph");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("Graph: duplicate edge");
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    max_degree_ = std::max(max_degree_, static_cast<int>(list.size()));
  }
  auto seen = component_mask(n_, adj_, 0);
  connected_ = std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

bool Graph::adjacent(int u, int v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v});
  if (it == edges_.end() || *it != std::pair{u, v}) return -1;
  return static_cast<int>(it - edges_.begin());
}

WeightedMultigraph::WeightedMultigraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw std::invalid_argument("WeightedMultigraph: empty");
  classes_.assign(n, {});
  slot_count_.assign(n, 0);
  std::vector<std::vector<std::pair<int, int>>> raw(n);  // (neighbor, slots)
  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("WeightedMultigraph: vertex out of range");
    if (e.weight <= 0.0)
      throw std::invalid_argument("WeightedMultigraph: weight must be positive");
    if (e.multiplicity <= 0)
      throw std::invalid_argument("WeightedMultigraph: multiplicity must be positive");
    total_weight_ += e.weight * e.multiplicity;
    if (e.u == e.v) {
      raw[e.u].emplace_back(e.u, 2 * e.multiplicity);
    } else {
      raw[e.u].emplace_back(e.v, e.multiplicity);
      raw[e.v].emplace_back(e.u, e.multiplicity);
    }
  }
  for (int v = 0; v < n; ++v) {
    auto& entries = raw[v];
    std::sort(entries.begin(), entries.end());
    for (auto& [nb, slots] : entries) {
      if (!classes_[v].empty() && classes_[v].back().neighbor == nb)
        classes_[v].back().slots += slots;
      else
        classes_[v].push_back({nb, slots});
      slot_count_[v] += slots;
    }
  }
  // connectivity over the underlying simple support
  std::vector<std::vector<int>> adj(n);
  for (auto& e : edges_)
    if (e.u != e.v) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  auto seen = component_mask(n, adj, 0);
  connected_ = std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

// -- generators ------------------------------------------------------------

Graph gen_path(int n) {
  if (n < 2) throw std::invalid_argument("gen_path: n >= 2 required");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: n >= 3 required");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph gen_complete(int n) {
  if (n < 2) throw std::invalid_argument("gen_complete: n >= 2 required");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

namespace {

Graph gen_lattice(int k, int d, bool periodic) {
  if (d < 1) throw std::invalid_argument("lattice: dimension >= 1 required");
  if (periodic && k < 3)
    throw std::invalid_argument(
        "gen_torus: k >= 3 required (k = 2 would create parallel edges)");
  if (!periodic && k < 2) throw std::invalid_argument("gen_grid: k >= 2 required");
  double size = std::pow(static_cast<double>(k), d);
  if (size > 1e7) throw std::invalid_argument("lattice: k^d too large");
  const int n = static_cast<int>(std::llround(size));
  std::vector<int> stride(d, 1);
  for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * k;
  std::vector<std::pair<int, int>> edges;
  for (int id = 0; id < n; ++id) {
    for (int i = 0; i < d; ++i) {
      int c = (id / stride[i]) % k;
      if (c + 1 < k)
        edges.emplace_back(id, id + stride[i]);
      else if (periodic)
        edges.emplace_back(id, id - c * stride[i]);
    }
  }
  Graph g(n, edges);
  g.set_lattice({k, d, periodic});
  return g;
}

}  // namespace

Graph gen_torus(int k, int d) { return gen_lattice(k, d, true); }
Graph gen_grid(int k, int d) { return gen_lattice(k, d, false); }

Graph gen_random_tree(int n, int dmax, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_tree: n >= 2 required");
  if (dmax < 2) throw std::invalid_argument("gen_random_tree: dmax >= 2 required");
  RngStream rng(seed, 0);
  // random attachment order; attach each vertex to a uniform vertex with
  // residual degree capacity
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform_below(i + 1)]);
  std::vector<int> degree(n, 0);
  std::vector<int> open;  // attachment candidates with degree < dmax
  std::vector<std::pair<int, int>> edges;
  open.push_back(order[0]);
  for (int i = 1; i < n; ++i) {
    int v = order[i];
    int pos = rng.uniform_below(static_cast<int>(open.size()));
    int u = open[pos];
    edges.emplace_back(u, v);
    if (++degree[u] >= dmax) {
      open[pos] = open.back();
      open.pop_back();
    }
    if (++degree[v] < dmax) open.push_back(v);
    if (open.empty() && i + 1 < n)
      throw std::invalid_argument("gen_random_tree: infeasible dmax");
  }
  return Graph(n, edges);
}

Graph gen_random_regular(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1 || d >= n)
    throw std::invalid_argument("gen_random_regular: need 1 <= d < n, n >= 2");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("gen_random_regular: n*d must be even");
  const int budget = 1000;
  for (int attempt = 0; attempt < budget; ++attempt) {
    RngStream rng(seed, static_cast<std::uint64_t>(attempt));
    // configuration model: pair up half-edge stubs, reject on loop/multi-edge
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.uniform_below(i + 1)]);
    std::set<std::pair<int, int>> edge_set;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (u > v) std::swap(u, v);
      if (ok && !edge_set.insert({u, v}).second) ok = false;
    }
    if (!ok) continue;
    Graph g(n, {edge_set.begin(), edge_set.end()});
    if (g.connected()) return g;
  }
  throw std::runtime_error("gen_random_regular: retry budget exhausted");
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_gnp: n >= 2 required");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("gen_gnp: need 0 < p <= 1");
  const int budget = 1000;
  for (int attempt = 0; attempt < budget; ++attempt) {
    RngStream rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(p)) edges.emplace_back(i, j);
    Graph g(n, edges);
    if (g.connected()) return g;
  }
  throw std::runtime_error("gen_gnp: retry budget exhausted (p too small?)");
}

Graph gen_random_subcubic(int n, int extra_edges, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_subcubic: n >= 2 required");
  Graph tree = gen_random_tree(n, 3, seed);
  std::vector<std::pair<int, int>> edges = tree.edges();
  std::vector<int> degree(n, 0);
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  RngStream rng(seed, 0x5abc0ULL);
  std::set<std::pair<int, int>> present(edges.begin(), edges.end());
  int added = 0, attempts = 0;
  while (added < extra_edges && attempts < 50 * (extra_edges + 1)) {
    ++attempts;
    int u = rng.uniform_below(n), v = rng.uniform_below(n);
    if (u == v || degree[u] >= 3 || degree[v] >= 3) continue;
    if (u > v) std::swap(u, v);
    if (!present.insert({u, v}).second) continue;
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
    ++added;
  }
  return Graph(n, edges);
}

// -- operations ------------------------------------------------------------

Contraction contract(const Graph& g, const std::vector<int>& s) {
  const int n = g.order();
  std::vector<char> in_s(n, 0);
  for (int v : s) {
    if (v < 0 || v >= n) throw std::invalid_argument("contract: vertex out of range");
    in_s[v] = 1;
  }
  const int k = static_cast<int>(std::count(in_s.begin(), in_s.end(), 1));
  if (k == 0) throw std::invalid_argument("contract: set is empty");
  if (k == n) throw std::invalid_argument("contract: set must be a proper subset");

  Contraction result;
  result.vertex_map.assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (!in_s[v]) result.vertex_map[v] = next++;
  result.merged_vertex = next;
  for (int v = 0; v < n; ++v)
    if (in_s[v]) result.vertex_map[v] = result.merged_vertex;

  // accumulate multiplicities per contracted endpoint pair
  std::vector<WeightedMultigraph::Edge> edges;
  std::set<std::pair<int, int>> dummy;
  std::vector<std::pair<int, int>> mapped;
  mapped.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) {
    int a = result.vertex_map[u], b = result.vertex_map[v];
    if (a > b) std::swap(a, b);
    mapped.emplace_back(a, b);
  }
  std::sort(mapped.begin(), mapped.end());
  for (size_t i = 0; i < mapped.size();) {
    size_t j = i;
    while (j < mapped.size() && mapped[j] == mapped[i]) ++j;
    edges.push_back({mapped[i].first, mapped[i].second, 1.0,
                     static_cast<int>(j - i)});
    i = j;
  }
  result.graph = WeightedMultigraph(next + 1, std::move(edges));
  return result;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  return bfs_distances(g, std::vector<int>{source});
}

std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.order(), -1);
  std::deque<int> queue;
  for (int s : sources) {
    if (s < 0 || s >= g.order())
      throw std::invalid_argument("bfs_distances: source out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

std::vector<int> bfs_parents(const Graph& g, int target) {
  auto dist = bfs_distances(g, target);
  std::vector<int> parent(g.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    if (v == target || dist[v] < 0) continue;
    for (int w : g.neighbors(v))
      if (dist[w] == dist[v] - 1) {
        parent[v] = w;
        break;  // neighbours sorted, smallest id wins
      }
  }
  return parent;
}

// -- file formats ----------------------------------------------------------

Graph load_edge_list(std::istream& in) {
  int n, m;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: bad header");
  std::vector<std::pair<int, int>> edges(m);
  for (auto& [u, v] : edges)
    if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated");
  return Graph(n, edges);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  auto& e = j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  if (g.has_lattice()) {
    j["lattice"] = {{"k", g.lattice().k},
                    {"dims", g.lattice().dims},
                    {"periodic", g.lattice().periodic}};
  }
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  Graph g(n, edges);
  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    g.set_lattice({l.at("k").get<int>(), l.at("dims").get<int>(),
                   l.at("periodic").get<bool>()});
  }
  return g;
}

nlohmann::json multigraph_to_json(const WeightedMultigraph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  j["weighted"] = true;
  auto& e = j["edges"] = nlohmann::json::array();
  for (const auto& edge : g.edges())
    e.push_back({edge.u, edge.v, edge.weight, edge.multiplicity});
  return j;
}

WeightedMultigraph multigraph_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<WeightedMultigraph::Edge> edges;
  for (const auto& e : j.at("edges")) {
    WeightedMultigraph::Edge edge;
    edge.u = e.at(0).get<int>();
    edge.v = e.at(1).get<int>();
    edge.weight = e.size() > 2 ? e.at(2).get<double>() : 1.0;
    edge.multiplicity = e.size() > 3 ? e.at(3).get<int>() : 1;
    edges.push_back(edge);
  }
  return WeightedMultigraph(n, std::move(edges));
}

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  if (ends_with(path, ".json")) {
    nlohmann::json j;
    in >> j;
    return graph_from_json(j);
  }
  return load_edge_list(in);
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (ends_with(path, ".json"))
    out << graph_to_json(g).dump(2) << '\n';
  else
    save_edge_list(g, out);
}

}  // namespace crw
