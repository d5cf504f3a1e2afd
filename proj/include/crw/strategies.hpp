#pragma once

#include <vector>

#include "crw/graph.hpp"
#include "crw/strategy_table.hpp"
#include "crw/walk.hpp"

namespace crw {

/// Two-tier table: prefer the BFS parent toward the target, ties uniform.
StrategyTable greedy_toward_table(const Graph& g, int target);
/// Decision rule form of the same strategy.
Strategy greedy_toward(const Graph& g, int target);

/// Edge weights w(uv) = 2^{-min(d(u,target), d(v,target))}. Adjacent-edge
/// ratios are always in {1/2, 1, 2}, so alpha_for_weighting accepts them.
std::vector<double> distance_halving_weights(const Graph& g, int target);
StrategyTable distance_halving_strategy(const Graph& g, int target);

/// Edge weights 2^{+min(d(u,root), d(v,root))}, emitted for inspection only.
std::vector<double> transient_weights(const Graph& g, int root);

/// Tree strategy toward y with root avoidance: three tiers per vertex —
/// the neighbour toward y first, the neighbour toward the root last
/// (the toward-y preference wins when they coincide), the rest tied.
StrategyTable tree_sigma_strategy(const Graph& tree, int root, int x, int y);

/// The reversible edge weighting equidistributed with tree_sigma_strategy on
/// the x-side of y, normalized to weight 1 on the edge xy; edges separated
/// from x by y get weight 0 (inessential). Indexed like tree.edges().
std::vector<double> tree_edge_weights(const Graph& tree, int root, int x, int y);

/// Lattice rule: prefer moves in the highest dimension whose coordinate
/// differs from the target's; within a dimension prefer the direction that
/// shortens the (cyclic) distance; ties uniform. Requires lattice metadata
/// on the graph (gen_torus / gen_grid output).
Strategy torus_product_strategy(const Graph& g, int target);
/// Cover variant: phase through a boustrophedon Hamilton path, steering with
/// the lattice rule toward the next uncovered waypoint.
Strategy torus_cover_strategy(const Graph& g);

/// Cover by phasing through a DFS double-traversal of a spanning tree,
/// running greedy_toward on the next uncovered waypoint.
Strategy spanning_walk_cover(const Graph& g, int start);

/// Take an uncovered option whenever exactly one is offered; ties uniform.
Strategy greedy_uncovered();

/// Two-phase cover strategy: SRW until at most max(1, floor(n / ln^C n))
/// vertices are uncovered, then repeated boosted hitting of the uncovered
/// set within windows of ceil(4 t_rel ln n) steps, recomputing the DP when
/// a new vertex is covered. t_hit_estimate (if positive) bounds phase 1.
Strategy phased_boost_cover(const Graph& g, int start, double t_rel,
                            double t_hit_estimate = 0.0, double C = 3.0);

}  // namespace crw
