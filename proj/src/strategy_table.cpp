#include "crw/strategy_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace crw {

StrategyTable::StrategyTable(const Graph& g) {
  adjacency_.resize(g.order());
  pair_alpha_.resize(g.order());
  for (int v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    adjacency_[v].assign(nb.begin(), nb.end());
    int d = static_cast<int>(nb.size());
    pair_alpha_[v].assign(static_cast<size_t>(d) * (d - 1) / 2, 0.5);
  }
}

int StrategyTable::neighbor_pos(int v, int w) const {
  const auto& list = adjacency_[v];
  auto it = std::lower_bound(list.begin(), list.end(), w);
  if (it == list.end() || *it != w)
    throw std::invalid_argument("StrategyTable: not a neighbour");
  return static_cast<int>(it - list.begin());
}

int StrategyTable::pair_index(int v, int a, int b) const {
  // index into the upper triangle of the d x d pair grid, a < b
  return a * (2 * degree(v) - a - 1) / 2 + (b - a - 1);
}

double StrategyTable::alpha(int v, int i, int j) const {
  if (i == j) return 0.5;
  int a = neighbor_pos(v, i), b = neighbor_pos(v, j);
  if (a < b) return pair_alpha_[v][pair_index(v, a, b)];
  return 1.0 - pair_alpha_[v][pair_index(v, b, a)];
}

void StrategyTable::set_alpha(int v, int i, int j, double value) {
  if (value < 0.0 || value > 1.0)
    throw std::invalid_argument("StrategyTable: alpha outside [0,1]");
  if (i == j) {
    if (value != 0.5)
      throw std::invalid_argument("StrategyTable: alpha(v,i,i) is fixed at 1/2");
    return;
  }
  int a = neighbor_pos(v, i), b = neighbor_pos(v, j);
  if (a < b)
    pair_alpha_[v][pair_index(v, a, b)] = value;
  else
    pair_alpha_[v][pair_index(v, b, a)] = 1.0 - value;
}

bool StrategyTable::matches(const Graph& g) const {
  if (g.order() != order()) return false;
  for (int v = 0; v < order(); ++v) {
    auto nb = g.neighbors(v);
    if (!std::equal(nb.begin(), nb.end(), adjacency_[v].begin(), adjacency_[v].end()))
      return false;
  }
  return true;
}

nlohmann::json StrategyTable::to_json() const {
  nlohmann::json j;
  j["n"] = order();
  auto& rows = j["alpha"] = nlohmann::json::array();
  for (int v = 0; v < order(); ++v) {
    nlohmann::json row;
    row["v"] = v;
    auto& pairs = row["pairs"] = nlohmann::json::array();
    const auto& nb = adjacency_[v];
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b)
        pairs.push_back({{"pair", {nb[a], nb[b]}},
                         {"alpha", pair_alpha_[v][pair_index(v, static_cast<int>(a),
                                                             static_cast<int>(b))]}});
    rows.push_back(std::move(row));
  }
  return j;
}

StrategyTable StrategyTable::from_json(const nlohmann::json& j) {
  // reconstruct adjacency from the pair lists
  int n = j.at("n").get<int>();
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& row : j.at("alpha")) {
    int v = row.at("v").get<int>();
    for (const auto& p : row.at("pairs")) {
      adjacency[v].push_back(p.at("pair").at(0).get<int>());
      adjacency[v].push_back(p.at("pair").at(1).get<int>());
    }
  }
  StrategyTable table;
  table.adjacency_.resize(n);
  table.pair_alpha_.resize(n);
  for (int v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    table.adjacency_[v] = list;
    int d = static_cast<int>(list.size());
    table.pair_alpha_[v].assign(static_cast<size_t>(d) * (d - 1) / 2, 0.5);
  }
  for (const auto& row : j.at("alpha")) {
    int v = row.at("v").get<int>();
    for (const auto& p : row.at("pairs"))
      table.set_alpha(v, p.at("pair").at(0).get<int>(), p.at("pair").at(1).get<int>(),
                      p.at("alpha").get<double>());
  }
  // degree-1 vertices carry no pairs; recover their neighbour from the
  // symmetric entries of other vertices
  for (int v = 0; v < n; ++v) {
    if (!table.adjacency_[v].empty()) continue;
    for (int u = 0; u < n; ++u)
      for (int w : table.adjacency_[u])
        if (w == v) table.adjacency_[v].push_back(u);
    std::sort(table.adjacency_[v].begin(), table.adjacency_[v].end());
    table.adjacency_[v].erase(
        std::unique(table.adjacency_[v].begin(), table.adjacency_[v].end()),
        table.adjacency_[v].end());
  }
  return table;
}

TransitionMatrix transitions_from_alpha(const Graph& g, const StrategyTable& alpha) {
  if (!alpha.matches(g))
    throw std::invalid_argument("transitions_from_alpha: table does not match graph");
  const int n = g.order();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    const double d2 = static_cast<double>(nb.size()) * static_cast<double>(nb.size());
    for (int i : nb) {
      double sum = 0.0;
      for (int j : nb) sum += alpha.alpha(v, i, j);
      P(v, i) = 2.0 * sum / d2;
    }
  }
  return {std::move(P), TransitionMatrix::Kind::CRW};
}

TransitionMatrix srw_matrix(const Graph& g) {
  const int n = g.order();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) P(v, w) = 1.0 / g.degree(v);
  return {std::move(P), TransitionMatrix::Kind::SRW};
}

TransitionMatrix lazy_matrix(const Graph& g) {
  TransitionMatrix srw = srw_matrix(g);
  Eigen::MatrixXd P = 0.5 * (Eigen::MatrixXd::Identity(g.order(), g.order()) + srw.P);
  return {std::move(P), TransitionMatrix::Kind::LazySRW};
}

double rank_probability(int d, int r) {
  if (d < 1 || r < 1 || r > d)
    throw std::invalid_argument("rank_probability: need 1 <= r <= d");
  return static_cast<double>(2 * (d - r) + 1) / (static_cast<double>(d) * d);
}

StrategyTable alpha_from_ordering(
    const Graph& g, const std::vector<std::vector<std::vector<int>>>& tiers) {
  if (static_cast<int>(tiers.size()) != g.order())
    throw std::invalid_argument("alpha_from_ordering: one tier list per vertex");
  StrategyTable table(g);
  std::vector<int> tier_of(g.order());
  for (int v = 0; v < g.order(); ++v) {
    std::fill(tier_of.begin(), tier_of.end(), -1);
    int seen = 0;
    for (size_t t = 0; t < tiers[v].size(); ++t)
      for (int w : tiers[v][t]) {
        if (!g.adjacent(v, w))
          throw std::invalid_argument("alpha_from_ordering: non-neighbour in tier");
        if (tier_of[w] != -1)
          throw std::invalid_argument("alpha_from_ordering: neighbour listed twice");
        tier_of[w] = static_cast<int>(t);
        ++seen;
      }
    if (seen != g.degree(v))
      throw std::invalid_argument("alpha_from_ordering: order omits a neighbour");
    auto nb = g.neighbors(v);
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b) {
        int ti = tier_of[nb[a]], tj = tier_of[nb[b]];
        table.set_alpha(v, nb[a], nb[b], ti < tj ? 1.0 : (ti > tj ? 0.0 : 0.5));
      }
  }
  return table;
}

StrategyTable alpha_from_vertex_ranks(const Graph& g, std::span<const double> rank) {
  if (static_cast<int>(rank.size()) != g.order())
    throw std::invalid_argument("alpha_from_vertex_ranks: one rank per vertex");
  StrategyTable table(g);
  for (int v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b) {
        double ri = rank[nb[a]], rj = rank[nb[b]];
        table.set_alpha(v, nb[a], nb[b], ri < rj ? 1.0 : (ri > rj ? 0.0 : 0.5));
      }
  }
  return table;
}

StrategyTable mixed_partition_alpha(
    const Graph& g,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& partition) {
  if (static_cast<int>(partition.size()) != g.order())
    throw std::invalid_argument("mixed_partition_alpha: one partition per vertex");
  StrategyTable table(g);
  std::vector<int> side(g.order());
  for (int v = 0; v < g.order(); ++v) {
    const auto& [a_set, b_set] = partition[v];
    std::fill(side.begin(), side.end(), -1);
    for (int w : a_set) side[w] = 0;
    for (int w : b_set) {
      if (side[w] == 0)
        throw std::invalid_argument("mixed_partition_alpha: A and B overlap");
      side[w] = 1;
    }
    for (int w : g.neighbors(v))
      if (side[w] == -1)
        throw std::invalid_argument("mixed_partition_alpha: neighbour missing");
    const double a = static_cast<double>(a_set.size());
    const double b = static_cast<double>(b_set.size());
    const double p = b > 0 ? b / (2.0 * (a + 2.0 * b)) : 0.5;
    auto nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        int si = side[nb[i]], sj = side[nb[j]];
        if (si == sj)
          table.set_alpha(v, nb[i], nb[j], 0.5);
        else if (si == 0)  // nb[i] in A, nb[j] in B
          table.set_alpha(v, nb[i], nb[j], p);
        else
          table.set_alpha(v, nb[i], nb[j], 1.0 - p);
      }
  }
  return table;
}

StrategyTable alpha_for_weighting(const Graph& g, std::span<const double> edge_weights) {
  if (static_cast<int>(edge_weights.size()) != g.size())
    throw std::invalid_argument("alpha_for_weighting: one weight per edge");
  for (double w : edge_weights)
    if (!(w > 0.0))
      throw std::invalid_argument("alpha_for_weighting: weights must be positive");

  const double tol = 1e-9;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> partition(g.order());
  for (int v = 0; v < g.order(); ++v) {
    std::vector<std::pair<double, int>> incident;
    for (int w : g.neighbors(v))
      incident.emplace_back(edge_weights[g.edge_index(v, w)], w);
    std::sort(incident.begin(), incident.end());
    auto& [light, heavy] = partition[v];
    if (incident.empty()) continue;
    const double lo = incident.front().first;
    for (auto& [wt, nbv] : incident) {
      if (std::abs(wt / lo - 1.0) <= tol)
        light.push_back(nbv);
      else if (std::abs(wt / (2.0 * lo) - 1.0) <= tol)
        heavy.push_back(nbv);
      else
        throw std::invalid_argument(
            "alpha_for_weighting: incident weights at vertex " + std::to_string(v) +
            " are not two values with ratio 2");
    }
  }
  return mixed_partition_alpha(g, partition);
}

}  // namespace crw
