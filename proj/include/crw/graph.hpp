#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace crw {

/// Optional product-lattice metadata carried by torus/grid generator output.
/// Vertex ids are mixed-radix over coordinates: id = sum_i c_i * k^i.
struct LatticeInfo {
  int k = 0;
  int dims = 0;
  bool periodic = false;
};

/// Undirected simple graph with dense vertex ids 0..n-1.
/// Immutable after construction; adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;
  bool connected() const { return connected_; }
  int max_degree() const { return max_degree_; }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// Index of edge {u,v} in edges(), or -1.
  int edge_index(int u, int v) const;

  bool has_lattice() const { return lattice_.dims > 0; }
  const LatticeInfo& lattice() const { return lattice_; }
  void set_lattice(const LatticeInfo& info) { lattice_ = info; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  bool connected_ = false;
  int max_degree_ = 0;
  LatticeInfo lattice_;
};

/// Undirected multigraph with positive edge weights and integer
/// multiplicities; loops allowed. Produced by contract().
class WeightedMultigraph {
 public:
  struct Edge {
    int u, v;
    double weight = 1.0;
    int multiplicity = 1;
  };

  /// One entry per distinct neighbour of a vertex; loops appear as
  /// neighbour == vertex with two half-slots per loop copy.
  struct SlotClass {
    int neighbor;
    int slots;
  };

  WeightedMultigraph() = default;
  WeightedMultigraph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sum over edge records of weight * multiplicity (loops counted once).
  double total_weight() const { return total_weight_; }
  /// Number of half-edge slots at v (parallel edges add multiplicity,
  /// loops add twice their multiplicity).
  int degree_slots(int v) const { return slot_count_[v]; }
  std::span<const SlotClass> slot_classes(int v) const { return classes_[v]; }
  bool connected() const { return connected_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<SlotClass>> classes_;
  std::vector<int> slot_count_;
  double total_weight_ = 0.0;
  bool connected_ = false;
};

/// Result of contracting a vertex set to a single vertex. Kept vertices are
/// renumbered 0..n-|S|-1 preserving order; the merged vertex is the last id.
struct Contraction {
  WeightedMultigraph graph;
  std::vector<int> vertex_map;  // original id -> contracted id
  int merged_vertex = -1;
};

// -- generators ------------------------------------------------------------

Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_complete(int n);
Graph gen_torus(int k, int d);
Graph gen_grid(int k, int d);
Graph gen_random_tree(int n, int dmax, std::uint64_t seed);
Graph gen_random_regular(int n, int d, std::uint64_t seed);
Graph gen_gnp(int n, double p, std::uint64_t seed);
/// Connected random graph with maximum degree 3: bounded-degree random tree
/// plus up to extra_edges random degree-respecting chords.
Graph gen_random_subcubic(int n, int extra_edges, std::uint64_t seed);

// -- operations ------------------------------------------------------------

Contraction contract(const Graph& g, const std::vector<int>& s);
std::vector<int> bfs_distances(const Graph& g, int source);
std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources);
/// BFS parent map toward target: parent[v] is the neighbour of v on a
/// shortest path to target (smallest id among candidates); parent[target] = -1.
std::vector<int> bfs_parents(const Graph& g, int target);

// -- file formats ----------------------------------------------------------

// Edge-list text: first line "n m", then m lines "u v".
Graph load_edge_list(std::istream& in);
void save_edge_list(const Graph& g, std::ostream& out);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json multigraph_to_json(const WeightedMultigraph& g);
WeightedMultigraph multigraph_from_json(const nlohmann::json& j);

Graph load_graph_file(const std::string& path);  // dispatch on extension
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace crw
