#include "crw/boost_dp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace crw {

double gamma_exponent(int d) {
  if (d < 2) throw std::invalid_argument("gamma_exponent: d >= 2 required");
  return std::log(static_cast<double>(d) * d / (2.0 * d - 1.0)) /
         std::log(static_cast<double>(d));
}

namespace {

// sum over ordered pairs of max resp. min, via one sort:
// ascending x_(0..m-1) gives sum max = sum_i x_(i) (2i + 1),
// sum min = sum_i x_(i) (2(m - i) - 1).
double pair_sum(std::span<const double> values, bool take_max) {
  const size_t m = values.size();
  if (m == 0) throw std::invalid_argument("choice operator: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double count = take_max ? 2.0 * i + 1.0 : 2.0 * (m - i) - 1.0;
    sum += sorted[i] * count;
  }
  return sum;
}

}  // namespace

double mc2(std::span<const double> values) {
  const double m = static_cast<double>(values.size());
  return pair_sum(values, true) / (m * m);
}

double mc2_min(std::span<const double> values) {
  const double m = static_cast<double>(values.size());
  return pair_sum(values, false) / (m * m);
}

double power_mean(double p, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("power_mean: empty input");
  if (p == 0.0) throw std::invalid_argument("power_mean: p must be nonzero");
  if (p < 0.0)
    for (double x : values)
      if (x == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : values) {
    if (x < 0.0) throw std::invalid_argument("power_mean: negative input");
    sum += std::pow(x, p);
  }
  return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

EventSpec EventSpec::hit_by(std::vector<int> s, long long t) {
  if (s.empty()) throw std::invalid_argument("EventSpec: set must be nonempty");
  if (t < 0) throw std::invalid_argument("EventSpec: horizon must be >= 0");
  EventSpec ev;
  ev.kind = Kind::HitSetByT;
  ev.set = std::move(s);
  ev.horizon = t;
  return ev;
}

EventSpec EventSpec::at_time(std::vector<int> s, long long t) {
  if (s.empty()) throw std::invalid_argument("EventSpec: set must be nonempty");
  if (t < 0) throw std::invalid_argument("EventSpec: horizon must be >= 0");
  EventSpec ev;
  ev.kind = Kind::AtSetAtT;
  ev.set = std::move(s);
  ev.horizon = t;
  return ev;
}

EventSpec EventSpec::generic(long long t,
                             std::function<bool(std::span<const int>)> pred) {
  if (t < 0) throw std::invalid_argument("EventSpec: horizon must be >= 0");
  EventSpec ev;
  ev.kind = Kind::Generic;
  ev.horizon = t;
  ev.predicate = std::move(pred);
  return ev;
}

namespace {

double combine(ChoiceMode mode, std::span<const double> values) {
  switch (mode) {
    case ChoiceMode::Max:
      return mc2(values);
    case ChoiceMode::Min:
      return mc2_min(values);
    case ChoiceMode::Mean: {
      double sum = 0.0;
      for (double x : values) sum += x;
      return sum / static_cast<double>(values.size());
    }
  }
  return 0.0;
}

std::vector<char> set_mask(const Graph& g, const std::vector<int>& set) {
  std::vector<char> mask(g.order(), 0);
  for (int v : set) {
    if (v < 0 || v >= g.order())
      throw std::invalid_argument("EventSpec: set vertex out of range");
    mask[v] = 1;
  }
  return mask;
}

// One sweep of the factorized recurrence into `next`.
void dp_sweep(const Graph& g, const std::vector<char>& in_set, bool hit_kind,
              ChoiceMode mode, const std::vector<double>& prev,
              std::vector<double>& next) {
  std::vector<double> buffer;
  for (int x = 0; x < g.order(); ++x) {
    if (hit_kind && in_set[x]) {
      next[x] = 1.0;
      continue;
    }
    auto nb = g.neighbors(x);
    buffer.clear();
    for (int w : nb) buffer.push_back(prev[w]);
    next[x] = combine(mode, buffer);
  }
}

// Value at u with O(n) memory (any horizon).
double factorized_value(const Graph& g, const EventSpec& ev, int u, ChoiceMode mode) {
  auto in_set = set_mask(g, ev.set);
  const bool hit_kind = ev.kind == EventSpec::Kind::HitSetByT;
  std::vector<double> prev(g.order()), next(g.order());
  for (int x = 0; x < g.order(); ++x) prev[x] = in_set[x] ? 1.0 : 0.0;
  for (long long tau = 1; tau <= ev.horizon; ++tau) {
    dp_sweep(g, in_set, hit_kind, mode, prev, next);
    prev.swap(next);
  }
  return prev[u];
}

// Full trajectory-tree recursion for generic events. Accumulates the node
// value; optionally accumulates phi[i] += value^eta * P(prefix).
double tree_rec(const Graph& g, const EventSpec& ev, std::vector<int>& prefix,
                long long remaining, ChoiceMode mode, double prob,
                std::vector<double>* phi, double eta) {
  double value;
  if (remaining == 0) {
    value = ev.predicate(prefix) ? 1.0 : 0.0;
  } else {
    auto nb = g.neighbors(prefix.back());
    std::vector<double> child(nb.size());
    for (size_t i = 0; i < nb.size(); ++i) {
      prefix.push_back(nb[i]);
      child[i] = tree_rec(g, ev, prefix, remaining - 1, mode,
                          prob / static_cast<double>(nb.size()), phi, eta);
      prefix.pop_back();
    }
    value = combine(mode, child);
  }
  if (phi) (*phi)[prefix.size() - 1] += std::pow(value, eta) * prob;
  return value;
}

EventSpec as_generic(const Graph& g, const EventSpec& ev) {
  if (ev.kind == EventSpec::Kind::Generic) return ev;
  auto mask = std::make_shared<std::vector<char>>(set_mask(g, ev.set));
  if (ev.kind == EventSpec::Kind::HitSetByT)
    return EventSpec::generic(ev.horizon, [mask](std::span<const int> traj) {
      for (int v : traj)
        if ((*mask)[v]) return true;
      return false;
    });
  return EventSpec::generic(ev.horizon, [mask](std::span<const int> traj) {
    return (*mask)[traj.back()] != 0;
  });
}

double generic_value(const Graph& g, const EventSpec& ev, int u, ChoiceMode mode,
                     const BoostLimits& limits) {
  if (ev.horizon > limits.generic_horizon_cap)
    throw std::invalid_argument("boost: generic event horizon exceeds cap");
  EventSpec gen = as_generic(g, ev);
  std::vector<int> prefix{u};
  return tree_rec(g, gen, prefix, gen.horizon, mode, 1.0, nullptr, 0.0);
}

BoostOutcome boost_impl(const Graph& g, int u, const EventSpec& ev, ChoiceMode mode,
                        const BoostLimits& limits) {
  if (u < 0 || u >= g.order()) throw std::invalid_argument("boost: start out of range");
  BoostOutcome out;
  if (ev.kind == EventSpec::Kind::Generic) {
    out.value = generic_value(g, ev, u, mode, limits);
    return out;
  }
  auto layers = std::make_shared<std::vector<std::vector<double>>>(
      event_dp_layers(g, ev, mode, limits));
  out.value = (*layers)[ev.horizon][u];
  out.has_rule = true;
  const bool prefer_larger = mode == ChoiceMode::Max;
  const long long t = ev.horizon;
  out.rule.name = prefer_larger ? "max-boost" : "min-boost";
  out.rule.instantiate = [layers, prefer_larger, t] {
    return [layers, prefer_larger, t](const WalkView& view, int a, int b, RngStream&) {
      if (a == b) return a;
      long long tau = t - view.time;
      if (tau <= 0) return std::min(a, b);  // event already determined
      const auto& layer = (*layers)[tau - 1];
      double va = layer[a], vb = layer[b];
      if (va == vb) return std::min(a, b);
      if (prefer_larger) return va > vb ? a : b;
      return va < vb ? a : b;
    };
  };
  return out;
}

}  // namespace

std::vector<std::vector<double>> event_dp_layers(const Graph& g, const EventSpec& ev,
                                                 ChoiceMode mode,
                                                 const BoostLimits& limits) {
  if (ev.kind == EventSpec::Kind::Generic)
    throw std::invalid_argument("event_dp_layers: set events only");
  if ((ev.horizon + 1) * static_cast<long long>(g.order()) > limits.table_cell_cap)
    throw std::invalid_argument("event_dp_layers: table size exceeds cell cap");
  auto in_set = set_mask(g, ev.set);
  const bool hit_kind = ev.kind == EventSpec::Kind::HitSetByT;
  std::vector<std::vector<double>> layers(ev.horizon + 1,
                                          std::vector<double>(g.order()));
  for (int x = 0; x < g.order(); ++x) layers[0][x] = in_set[x] ? 1.0 : 0.0;
  for (long long tau = 1; tau <= ev.horizon; ++tau)
    dp_sweep(g, in_set, hit_kind, mode, layers[tau - 1], layers[tau]);
  return layers;
}

BoostOutcome max_boost(const Graph& g, int u, const EventSpec& ev,
                       const BoostLimits& limits) {
  return boost_impl(g, u, ev, ChoiceMode::Max, limits);
}

BoostOutcome min_boost(const Graph& g, int u, const EventSpec& ev,
                       const BoostLimits& limits) {
  return boost_impl(g, u, ev, ChoiceMode::Min, limits);
}

double srw_probability(const Graph& g, int u, const EventSpec& ev,
                       const BoostLimits& limits) {
  if (u < 0 || u >= g.order())
    throw std::invalid_argument("srw_probability: start out of range");
  if (ev.kind == EventSpec::Kind::Generic)
    return generic_value(g, ev, u, ChoiceMode::Mean, limits);
  return factorized_value(g, ev, u, ChoiceMode::Mean);
}

std::vector<double> phi_diagnostic(const Graph& g, int u, const EventSpec& ev,
                                   const BoostLimits& limits) {
  if (u < 0 || u >= g.order())
    throw std::invalid_argument("phi_diagnostic: start out of range");
  if (ev.horizon > limits.generic_horizon_cap)
    throw std::invalid_argument("phi_diagnostic: horizon exceeds generic cap");
  const double eta = 1.0 / gamma_exponent(std::max(2, g.max_degree()));
  EventSpec gen = as_generic(g, ev);
  std::vector<double> phi(gen.horizon + 1, 0.0);
  std::vector<int> prefix{u};
  tree_rec(g, gen, prefix, gen.horizon, ChoiceMode::Max, 1.0, &phi, eta);
  return phi;
}

}  // namespace crw
