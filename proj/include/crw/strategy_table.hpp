#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "crw/graph.hpp"

namespace crw {

/// Preference probabilities of an unchanging CRW strategy: alpha(v, i, j) is
/// the probability of choosing neighbour i when offered {i, j} at v.
/// Values are stored once per unordered pair with the complement implied, so
/// alpha(v, j, i) = 1 - alpha(v, i, j) holds by construction; alpha(v, i, i)
/// is fixed at 1/2.
class StrategyTable {
 public:
  StrategyTable() = default;
  /// Uniform table (all alphas 1/2) over the graph's adjacency.
  explicit StrategyTable(const Graph& g);

  int order() const { return static_cast<int>(adjacency_.size()); }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  double alpha(int v, int i, int j) const;
  void set_alpha(int v, int i, int j, double a);

  /// Matches a graph if vertex count and adjacency coincide.
  bool matches(const Graph& g) const;

  nlohmann::json to_json() const;
  static StrategyTable from_json(const nlohmann::json& j);

 private:
  int pair_index(int v, int a, int b) const;  // positions a < b in nbr list
  int neighbor_pos(int v, int w) const;

  std::vector<std::vector<int>> adjacency_;   // sorted neighbour ids
  std::vector<std::vector<double>> pair_alpha_;  // per vertex, C(d,2) values
};

/// Row-stochastic transition matrix with a provenance tag.
struct TransitionMatrix {
  enum class Kind { CRW, SRW, LazySRW };
  Eigen::MatrixXd P;
  Kind kind = Kind::CRW;
};

/// Exact per-step CRW transition probabilities q_{v,i} = 2 sum_j alpha_v(i,j) / d(v)^2.
TransitionMatrix transitions_from_alpha(const Graph& g, const StrategyTable& alpha);
TransitionMatrix srw_matrix(const Graph& g);
TransitionMatrix lazy_matrix(const Graph& g);

/// Probability that a strict preference order at a degree-d vertex moves to
/// its rank-r neighbour (1-based): (2(d-r)+1)/d^2.
double rank_probability(int d, int r);

/// Tiered preference ordering per vertex: tiers[v] lists the neighbour tiers
/// from most to least preferred; each neighbour of v must appear exactly once.
/// alpha = 1 against strictly later tiers, 1/2 within a tier.
StrategyTable alpha_from_ordering(const Graph& g,
                                  const std::vector<std::vector<std::vector<int>>>& tiers);

/// Deterministic ordering strategy from a global vertex ranking (lower rank
/// preferred); equal ranks tie.
StrategyTable alpha_from_vertex_ranks(const Graph& g, std::span<const double> rank);

/// Per-vertex partition Gamma(v) = A u B with every B-neighbour twice as
/// likely as every A-neighbour. Cross pairs choose the A option with
/// probability |B| / (2(|A| + 2|B|)); within-set pairs are uniform.
StrategyTable mixed_partition_alpha(
    const Graph& g,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& partition);

/// Strategy whose transition probabilities are proportional to the given
/// edge weights (indexed like g.edges()). Requires that at every vertex the
/// incident weights take at most two values with ratio exactly 2
/// (tolerance 1e-9 on the ratio); throws std::invalid_argument otherwise.
StrategyTable alpha_for_weighting(const Graph& g, std::span<const double> edge_weights);

}  // namespace crw
