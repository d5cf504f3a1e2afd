#include "crw/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace crw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Two-choice MDP with slot-weighted options, solved by policy iteration over
// ordering policies with exact linear solves (Lemma beta-opt machinery).
// ---------------------------------------------------------------------------

struct Option {
  int target = -1;  // interior state index, -1 for terminal
  double terminal_value = 0.0;
  int slots = 0;
  int tiebreak = 0;  // destination vertex id, for deterministic ties
};

using ChoiceStates = std::vector<std::vector<Option>>;

std::vector<std::vector<int>> order_from_values(const ChoiceStates& states,
                                                const Eigen::VectorXd& values) {
  std::vector<std::vector<int>> order(states.size());
  for (size_t s = 0; s < states.size(); ++s) {
    const auto& opts = states[s];
    auto& ord = order[s];
    ord.resize(opts.size());
    for (size_t i = 0; i < opts.size(); ++i) ord[i] = static_cast<int>(i);
    auto value_of = [&](int idx) {
      const auto& o = opts[idx];
      return o.target < 0 ? o.terminal_value : values[o.target];
    };
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      double va = value_of(a), vb = value_of(b);
      if (va != vb) return va < vb;
      return opts[a].tiebreak < opts[b].tiebreak;
    });
  }
  return order;
}

// The chooser takes the better of two uniform slots, so the option at sorted
// position i is chosen with probability (S_i^2 - S_{i+1}^2)/d^2, S_i being
// the suffix slot sums over positions >= i.
Eigen::VectorXd evaluate_policy(const ChoiceStates& states,
                                const std::vector<std::vector<int>>& order) {
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
  double scale = 1.0;
  for (int s = 0; s < m; ++s) {
    const auto& opts = states[s];
    double d = 0;
    for (const auto& o : opts) d += o.slots;
    double suffix = d;
    for (int idx : order[s]) {
      const auto& o = opts[idx];
      const double next_suffix = suffix - o.slots;
      const double prob = (suffix * suffix - next_suffix * next_suffix) / (d * d);
      if (o.target >= 0)
        A(s, o.target) -= prob;
      else
        b(s) += prob * o.terminal_value;
      suffix = next_suffix;
      scale = std::max(scale, std::abs(o.terminal_value));
    }
  }
  Eigen::VectorXd h = A.partialPivLu().solve(b);
  const double residual = (A * h - b).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9 * scale))
    throw std::runtime_error("policy evaluation: linear solve residual too large");
  return h;
}

struct MdpSolution {
  Eigen::VectorXd h;
  int iterations = 0;
};

MdpSolution solve_choice_mdp(const ChoiceStates& states,
                             const Eigen::VectorXd& initial_values) {
  const int m = static_cast<int>(states.size());
  if (m == 0) return {Eigen::VectorXd(), 0};
  auto order = order_from_values(states, initial_values);
  Eigen::VectorXd h_prev;
  const int cap = 200 + 20 * m;
  for (int iter = 1; iter <= cap; ++iter) {
    Eigen::VectorXd h = evaluate_policy(states, order);
    auto next = order_from_values(states, h);
    if (next == order) return {std::move(h), iter};
    if (iter > 1) {
      const double change = (h - h_prev).cwiseAbs().maxCoeff();
      if (change <= 1e-13 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        return {std::move(h), iter};  // only tie churn left
    }
    h_prev = h;
    order = std::move(next);
  }
  throw std::runtime_error("solve_choice_mdp: policy iteration did not converge");
}

std::vector<int> multigraph_bfs(const WeightedMultigraph& f, int source) {
  std::vector<int> dist(f.order(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const auto& c : f.slot_classes(v))
      if (c.neighbor != v && dist[c.neighbor] < 0) {
        dist[c.neighbor] = dist[v] + 1;
        queue.push_back(c.neighbor);
      }
  }
  return dist;
}

}  // namespace

// ---------------------------------------------------------------------------
// fixed-chain solvers
// ---------------------------------------------------------------------------

Eigen::VectorXd expected_hitting(const Eigen::MatrixXd& P, const std::vector<int>& targets) {
  const int n = static_cast<int>(P.rows());
  std::vector<char> is_target(n, 0);
  for (int t : targets) {
    if (t < 0 || t >= n) throw std::invalid_argument("expected_hitting: target range");
    is_target[t] = 1;
  }
  std::vector<int> index(n, -1);
  std::vector<int> states;
  for (int v = 0; v < n; ++v)
    if (!is_target[v]) {
      index[v] = static_cast<int>(states.size());
      states.push_back(v);
    }
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int w = 0; w < n; ++w)
      if (!is_target[w] && P(states[i], w) != 0.0) A(i, index[w]) -= P(states[i], w);
  Eigen::VectorXd sol = A.partialPivLu().solve(Eigen::VectorXd::Ones(m));
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) h[states[i]] = sol[i];
  return h;
}

Eigen::VectorXd expected_hitting_weighted(const Graph& g,
                                          std::span<const double> edge_weights,
                                          int target) {
  if (static_cast<int>(edge_weights.size()) != g.size())
    throw std::invalid_argument("expected_hitting_weighted: one weight per edge");
  const int n = g.order();
  // positive-weight component containing the target
  std::vector<char> reach(n, 0);
  std::deque<int> queue{target};
  reach[target] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v))
      if (!reach[w] && edge_weights[g.edge_index(v, w)] > 0.0) {
        reach[w] = 1;
        queue.push_back(w);
      }
  }
  std::vector<int> index(n, -1), states;
  for (int v = 0; v < n; ++v)
    if (reach[v] && v != target) {
      index[v] = static_cast<int>(states.size());
      states.push_back(v);
    }
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    int x = states[i];
    double total = 0.0;
    for (int y : g.neighbors(x)) total += edge_weights[g.edge_index(x, y)];
    for (int y : g.neighbors(x)) {
      double w = edge_weights[g.edge_index(x, y)];
      if (w <= 0.0 || y == target) continue;
      A(i, index[y]) -= w / total;
    }
  }
  Eigen::VectorXd sol = A.partialPivLu().solve(Eigen::VectorXd::Ones(m));
  Eigen::VectorXd h = Eigen::VectorXd::Constant(n, kInf);
  h[target] = 0.0;
  for (int i = 0; i < m; ++i) h[states[i]] = sol[i];
  return h;
}

Eigen::MatrixXd srw_hitting_times(const Graph& g) {
  const int n = g.order();
  if (!g.connected()) throw std::invalid_argument("srw_hitting_times: disconnected");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd pi(n);
  double total = 2.0 * g.size();
  for (int v = 0; v < n; ++v) {
    pi[v] = g.degree(v) / total;
    for (int w : g.neighbors(v)) P(v, w) = 1.0 / g.degree(v);
  }
  Eigen::MatrixXd Z =
      (Eigen::MatrixXd::Identity(n, n) - P + Eigen::VectorXd::Ones(n) * pi.transpose())
          .partialPivLu()
          .inverse();
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = (Z(j, j) - Z(i, j)) / pi[j];
  return H;
}

// ---------------------------------------------------------------------------
// optimal hitting via policy iteration
// ---------------------------------------------------------------------------

MultigraphHitting optimal_hitting_multigraph(const WeightedMultigraph& f, int target) {
  const int n = f.order();
  if (target < 0 || target >= n)
    throw std::invalid_argument("optimal_hitting_multigraph: target out of range");
  if (!f.connected())
    throw std::invalid_argument("optimal_hitting_multigraph: graph must be connected");

  std::vector<int> index(n, -1), states;
  for (int v = 0; v < n; ++v)
    if (v != target) {
      index[v] = static_cast<int>(states.size());
      states.push_back(v);
    }
  ChoiceStates mdp(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    for (const auto& c : f.slot_classes(states[i])) {
      Option o;
      o.slots = c.slots;
      o.tiebreak = c.neighbor;
      if (c.neighbor == target)
        o.target = -1;
      else
        o.target = index[c.neighbor];
      mdp[i].push_back(o);
    }
  }
  auto dist = multigraph_bfs(f, target);
  Eigen::VectorXd init(states.size());
  for (size_t i = 0; i < states.size(); ++i) init[i] = dist[states[i]];

  MdpSolution sol = solve_choice_mdp(mdp, init);
  MultigraphHitting result;
  result.h = Eigen::VectorXd::Zero(n);
  for (size_t i = 0; i < states.size(); ++i) result.h[states[i]] = sol.h[i];
  result.iterations = sol.iterations;
  result.ordering.resize(n);
  for (int v = 0; v < n; ++v) result.ordering[v] = v;
  std::sort(result.ordering.begin(), result.ordering.end(), [&](int a, int b) {
    if (result.h[a] != result.h[b]) return result.h[a] < result.h[b];
    return a < b;
  });
  return result;
}

HittingSolution optimal_hitting(const Graph& g, const std::vector<int>& targets) {
  if (targets.empty()) throw std::invalid_argument("optimal_hitting: empty target set");
  if (!g.connected()) throw std::invalid_argument("optimal_hitting: graph must be connected");
  Contraction c = contract(g, targets);
  MultigraphHitting mh = optimal_hitting_multigraph(c.graph, c.merged_vertex);

  HittingSolution out;
  const int n = g.order();
  out.h = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v) out.h[v] = mh.h[c.vertex_map[v]];
  out.iterations = mh.iterations;
  out.ordering.resize(n);
  for (int v = 0; v < n; ++v) out.ordering[v] = v;
  std::sort(out.ordering.begin(), out.ordering.end(), [&](int a, int b) {
    if (out.h[a] != out.h[b]) return out.h[a] < out.h[b];
    return a < b;
  });
  // strict rank per vertex (Lemma beta-opt's beta, ties broken by id)
  Eigen::VectorXd rank(n);
  for (int i = 0; i < n; ++i) rank[out.ordering[i]] = i;
  out.strategy = alpha_from_vertex_ranks(g, std::span<const double>(rank.data(), n));
  return out;
}

// ---------------------------------------------------------------------------
// value iteration (independent oracle; direct pair loop, no shared machinery)
// ---------------------------------------------------------------------------

Eigen::VectorXd value_iteration_hitting(const WeightedMultigraph& f, int target,
                                        double tol, long long max_sweeps) {
  const int n = f.order();
  if (target < 0 || target >= n)
    throw std::invalid_argument("value_iteration_hitting: target out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n), next = v;
  for (long long sweep = 0; sweep < max_sweeps; ++sweep) {
    double delta = 0.0;
    for (int x = 0; x < n; ++x) {
      if (x == target) continue;
      auto classes = f.slot_classes(x);
      double d = f.degree_slots(x);
      double acc = 0.0;
      for (const auto& a : classes)
        for (const auto& b : classes)
          acc += static_cast<double>(a.slots) * b.slots * std::min(v[a.neighbor], v[b.neighbor]);
      next[x] = 1.0 + acc / (d * d);
      delta = std::max(delta, std::abs(next[x] - v[x]));
    }
    v = next;
    if (delta < tol) return v;
  }
  throw std::runtime_error("value_iteration_hitting: sweep cap reached");
}

Eigen::VectorXd value_iteration_hitting(const Graph& g, const std::vector<int>& targets,
                                        double tol, long long max_sweeps) {
  Contraction c = contract(g, targets);
  Eigen::VectorXd h = value_iteration_hitting(c.graph, c.merged_vertex, tol, max_sweeps);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.order());
  for (int v = 0; v < g.order(); ++v) out[v] = h[c.vertex_map[v]];
  return out;
}

// ---------------------------------------------------------------------------
// stationary distributions and optimal return
// ---------------------------------------------------------------------------

Eigen::VectorXd stationary(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  // irreducibility over the support digraph
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < n; ++w) {
        double p = transpose ? P(w, v) : P(v, w);
        if (p > 0.0 && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  if (!reach(false) || !reach(true))
    throw std::invalid_argument("stationary: chain is reducible");
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(0) = Eigen::RowVectorXd::Ones(n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[0] = 1.0;
  return A.partialPivLu().solve(b);
}

ReturnSolution optimal_return(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) throw std::invalid_argument("optimal_return: vertex range");
  ReturnSolution out;
  out.hitting = optimal_hitting(g, {v});
  TransitionMatrix tm = transitions_from_alpha(g, out.hitting.strategy);
  double expected = 1.0;
  for (int w : g.neighbors(v)) expected += tm.P(v, w) * out.hitting.h[w];
  out.expected_return = expected;
  out.pi_v = 1.0 / expected;
  return out;
}

// ---------------------------------------------------------------------------
// exact cover MDP on (vertex, covered set)
// ---------------------------------------------------------------------------

double CoverSolution::value(int vertex, std::uint32_t covered_mask) const {
  auto it = layers_.find(covered_mask);
  if (it == layers_.end() || vertex < 0 || vertex >= n_ ||
      ((covered_mask >> vertex) & 1u) == 0)
    throw std::invalid_argument("CoverSolution: unknown state");
  return it->second[vertex];
}

bool CoverSolution::has_state(int vertex, std::uint32_t covered_mask) const {
  auto it = layers_.find(covered_mask);
  return it != layers_.end() && vertex >= 0 && vertex < n_ &&
         ((covered_mask >> vertex) & 1u) != 0;
}

CoverSolution cover_mdp(const Graph& g, int start, std::uint32_t covered0) {
  const int n = g.order();
  if (n > 14) throw std::invalid_argument("cover_mdp: n <= 14 required (state count n*2^n)");
  if (start < 0 || start >= n) throw std::invalid_argument("cover_mdp: start out of range");
  if (!g.connected()) throw std::invalid_argument("cover_mdp: graph must be connected");
  if (covered0 >> n) throw std::invalid_argument("cover_mdp: covered set out of range");
  const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1u);
  const std::uint32_t mask0 = covered0 | (1u << start);

  // initial covered set must induce a connected subgraph
  {
    int first = std::countr_zero(mask0);
    std::uint32_t seen = 1u << first;
    std::deque<int> queue{first};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.neighbors(v))
        if (((mask0 >> w) & 1u) && !((seen >> w) & 1u)) {
          seen |= 1u << w;
          queue.push_back(w);
        }
    }
    if (seen != mask0)
      throw std::invalid_argument("cover_mdp: initial covered set must be connected");
  }

  // reachable covered sets: grow by adjacency
  std::vector<std::uint32_t> masks;
  std::unordered_set<std::uint32_t> seen_masks{mask0};
  std::deque<std::uint32_t> queue{mask0};
  while (!queue.empty()) {
    std::uint32_t mask = queue.front();
    queue.pop_front();
    masks.push_back(mask);
    if (mask == full) continue;
    for (int v = 0; v < n; ++v) {
      if (!((mask >> v) & 1u)) continue;
      for (int w : g.neighbors(v)) {
        std::uint32_t next = mask | (1u << w);
        if (next != mask && seen_masks.insert(next).second) queue.push_back(next);
      }
    }
  }
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });

  CoverSolution sol;
  sol.n_ = n;
  sol.start_ = start;
  sol.initial_mask_ = mask0;
  for (std::uint32_t mask : masks) {
    auto& values = sol.layers_[mask];
    values.assign(n, std::numeric_limits<double>::quiet_NaN());
    if (mask == full) {
      for (int v = 0; v < n; ++v) values[v] = 0.0;
      continue;
    }
    std::vector<int> members;
    std::vector<int> index(n, -1);
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1u) {
        index[v] = static_cast<int>(members.size());
        members.push_back(v);
      }
    ChoiceStates mdp(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      for (int w : g.neighbors(members[i])) {
        Option o;
        o.slots = 1;
        o.tiebreak = w;
        if ((mask >> w) & 1u) {
          o.target = index[w];
        } else {
          o.target = -1;
          o.terminal_value = sol.layers_.at(mask | (1u << w))[w];
        }
        mdp[i].push_back(o);
      }
    }
    MdpSolution layer = solve_choice_mdp(mdp, Eigen::VectorXd::Zero(members.size()));
    for (size_t i = 0; i < members.size(); ++i) values[members[i]] = layer.h[i];
  }
  return sol;
}

int next_step_oracle(const Graph& g, int u, int v, int w, std::uint32_t covered) {
  if (!g.adjacent(u, v) || !g.adjacent(u, w))
    throw std::invalid_argument("next_step_oracle: options must neighbour u");
  CoverSolution sol = cover_mdp(g, u, covered);
  const std::uint32_t mask0 = sol.initial_mask();
  const double val_v = sol.value(v, mask0 | (1u << v));
  const double val_w = sol.value(w, mask0 | (1u << w));
  if (val_v < val_w) return v;
  if (val_w < val_v) return w;
  return std::min(v, w);
}

// ---------------------------------------------------------------------------
// spectral quantities
// ---------------------------------------------------------------------------

SpectralReport spectral(const Graph& g, int budget) {
  const int n = g.order();
  if (n > budget) throw std::runtime_error("spectral: graph exceeds dense eigensolve budget");
  if (!g.connected()) throw std::invalid_argument("spectral: graph must be connected");
  if (n < 2) throw std::invalid_argument("spectral: need at least two vertices");
  // lazy walk symmetrized: (I + D^{-1/2} A D^{-1/2}) / 2
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v))
      N(v, w) = 0.5 / std::sqrt(static_cast<double>(g.degree(v)) * g.degree(w));
  for (int v = 0; v < n; ++v) N(v, v) += 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(N, Eigen::EigenvaluesOnly);
  SpectralReport report;
  report.lambda2 = solver.eigenvalues()[n - 2];
  report.t_rel = 1.0 / (1.0 - report.lambda2);
  report.pi.resize(n);
  const double total = 2.0 * g.size();
  for (int v = 0; v < n; ++v) report.pi[v] = g.degree(v) / total;
  return report;
}

LazyConvResult lazyconv_search(const Graph& g, int x, const std::vector<int>& s) {
  const int n = g.order();
  if (x < 0 || x >= n) throw std::invalid_argument("lazyconv_search: x out of range");
  if (s.empty()) throw std::invalid_argument("lazyconv_search: set must be nonempty");
  std::vector<char> in_s(n, 0);
  for (int v : s) {
    if (v < 0 || v >= n) throw std::invalid_argument("lazyconv_search: set out of range");
    in_s[v] = 1;
  }
  SpectralReport report = spectral(g);
  double pi_s = 0.0;
  for (int v = 0; v < n; ++v)
    if (in_s[v]) pi_s += report.pi[v];
  const long long window =
      static_cast<long long>(std::ceil(4.0 * report.t_rel * std::log(static_cast<double>(n))));
  Eigen::MatrixXd Pt = srw_matrix(g).P.transpose();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p[x] = 1.0;
  for (long long t = 1; t <= window; ++t) {
    p = Pt * p;
    double mass = 0.0;
    for (int v = 0; v < n; ++v)
      if (in_s[v]) mass += p[v];
    if (mass >= pi_s / 3.0) return {t, mass};
  }
  throw std::runtime_error("lazyconv_search: no t within 4 t_rel ln n reached pi(S)/3");
}

}  // namespace crw
