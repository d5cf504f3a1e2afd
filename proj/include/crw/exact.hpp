#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "crw/graph.hpp"
#include "crw/strategy_table.hpp"

namespace crw {

/// Expected hitting times of `targets` for a fixed chain P: solves
/// (I - Q) h = 1 over the non-target states. Entries of unreachable states
/// are meaningless for non-absorbing chains; all chains used here absorb.
Eigen::VectorXd expected_hitting(const Eigen::MatrixXd& P, const std::vector<int>& targets);

/// Hitting times of `target` for the reversible walk defined by edge weights
/// (indexed like g.edges(); zero-weight edges are treated as absent).
/// Vertices with no positive incident weight get +infinity.
Eigen::VectorXd expected_hitting_weighted(const Graph& g,
                                          std::span<const double> edge_weights,
                                          int target);

/// All-pairs SRW hitting times via the fundamental matrix.
Eigen::MatrixXd srw_hitting_times(const Graph& g);

/// Certified optimal hitting of a vertex set: policy iteration over
/// deterministic ordering strategies with exact linear solves.
struct HittingSolution {
  Eigen::VectorXd h;          // optimal expected hitting time, 0 on targets
  std::vector<int> ordering;  // all vertices, h non-decreasing, targets first
  StrategyTable strategy;     // induced deterministic ordering strategy on G
  int iterations = 0;
};

HittingSolution optimal_hitting(const Graph& g, const std::vector<int>& targets);

struct MultigraphHitting {
  Eigen::VectorXd h;
  std::vector<int> ordering;
  int iterations = 0;
};
/// Core solver on a multigraph: choices are between two uniformly random
/// incident half-edge slots (parallel edges weighted by multiplicity).
MultigraphHitting optimal_hitting_multigraph(const WeightedMultigraph& f, int target);

/// Independent oracle: h_{k+1}(x) = 1 + (1/d^2) sum over slot pairs (i,j)
/// of min(h_k(i), h_k(j)); monotone non-decreasing from h_0 = 0.
Eigen::VectorXd value_iteration_hitting(const WeightedMultigraph& f, int target,
                                        double tol = 1e-10,
                                        long long max_sweeps = 1'000'000);
Eigen::VectorXd value_iteration_hitting(const Graph& g, const std::vector<int>& targets,
                                        double tol = 1e-10,
                                        long long max_sweeps = 1'000'000);

/// Stationary distribution of an irreducible chain (pi P = pi, sum pi = 1).
Eigen::VectorXd stationary(const Eigen::MatrixXd& P);

struct ReturnSolution {
  double expected_return = 0.0;  // E_v[tau_v^+] under the optimal strategy
  double pi_v = 0.0;             // its reciprocal, the maximized pi_v
  HittingSolution hitting;       // the underlying hitting solution toward v
};
/// Strategy maximizing the stationary mass of v, i.e. minimizing E_v[tau_v^+].
ReturnSolution optimal_return(const Graph& g, int v);

/// Exact optimal cover values on the auxiliary state space
/// (current vertex, covered set), for n <= 14. Covered sets are restricted
/// to the connected supersets reachable from the initial configuration.
class CoverSolution {
 public:
  double optimal_cover() const { return value(start_, initial_mask_); }
  double value(int vertex, std::uint32_t covered_mask) const;
  bool has_state(int vertex, std::uint32_t covered_mask) const;
  std::size_t reachable_sets() const { return layers_.size(); }
  int start() const { return start_; }
  std::uint32_t initial_mask() const { return initial_mask_; }

 private:
  friend CoverSolution cover_mdp(const Graph& g, int start, std::uint32_t covered0);
  int n_ = 0;
  int start_ = 0;
  std::uint32_t initial_mask_ = 0;
  std::unordered_map<std::uint32_t, std::vector<double>> layers_;
};

/// covered0 may pre-mark visited vertices (the start is always added); the
/// initial covered set must induce a connected subgraph.
CoverSolution cover_mdp(const Graph& g, int start, std::uint32_t covered0 = 0);

/// Tiny-scale exact oracle for the next-step cover decision: returns v or w,
/// whichever successor state has the smaller optimal cover value
/// (ties toward the smaller id).
int next_step_oracle(const Graph& g, int u, int v, int w, std::uint32_t covered);

struct SpectralReport {
  double lambda2 = 0.0;  // second largest eigenvalue of the lazy walk
  double t_rel = 0.0;    // 1 / (1 - lambda2)
  Eigen::VectorXd pi;    // stationary distribution (degree-proportional)
};
SpectralReport spectral(const Graph& g, int budget = 2000);

struct LazyConvResult {
  long long t = 0;
  double p = 0.0;
};
/// First t <= ceil(4 t_rel ln n) with p^{(t)}_{x,S} >= pi(S)/3 under the SRW.
/// Throws std::runtime_error if no such t exists in the window.
LazyConvResult lazyconv_search(const Graph& g, int x, const std::vector<int>& s);

}  // namespace crw
