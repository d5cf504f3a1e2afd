#pragma once

#include <functional>
#include <span>
#include <vector>

#include "crw/graph.hpp"
#include "crw/walk.hpp"

namespace crw {

/// Boosting exponent gamma_d = log_d(d^2 / (2d - 1)), defined for d >= 2.
double gamma_exponent(int d);

/// Max choice operator: (1/m^2) sum_i sum_j max(x_i, x_j).
double mc2(std::span<const double> values);
/// Min choice operator: (1/m^2) sum_i sum_j min(x_i, x_j).
double mc2_min(std::span<const double> values);
/// p-power mean, p != 0.
double power_mean(double p, std::span<const double> values);

/// An event over trajectories of a fixed length (the horizon).
///   HitSetByT: some trajectory vertex lies in `set` (start included).
///   AtSetAtT:  the final vertex lies in `set`.
///   Generic:   arbitrary predicate over the full vertex sequence
///              (horizon capped; the trajectory tree is exponential).
struct EventSpec {
  enum class Kind { HitSetByT, AtSetAtT, Generic };
  Kind kind = Kind::HitSetByT;
  std::vector<int> set;
  long long horizon = 0;
  std::function<bool(std::span<const int>)> predicate;

  static EventSpec hit_by(std::vector<int> s, long long t);
  static EventSpec at_time(std::vector<int> s, long long t);
  static EventSpec generic(long long t, std::function<bool(std::span<const int>)> pred);
};

enum class ChoiceMode { Max, Min, Mean };

struct BoostLimits {
  long long generic_horizon_cap = 12;
  long long table_cell_cap = 50'000'000;  // (horizon+1) * n for replayable rules
};

struct BoostOutcome {
  double value = 0.0;
  bool has_rule = false;
  Strategy rule;  // only for HitSetByT / AtSetAtT events
};

/// Optimal CRW probability of the event from u (bottom-up DP, node value =
/// MC2 of offspring values) plus the certifying decision rule: prefer the
/// option with the larger value, ties toward the smaller vertex id.
BoostOutcome max_boost(const Graph& g, int u, const EventSpec& event,
                       const BoostLimits& limits = {});
/// Anti-boosting counterpart: mC2 combine, prefer the smaller value.
BoostOutcome min_boost(const Graph& g, int u, const EventSpec& event,
                       const BoostLimits& limits = {});
/// SRW probability of the event from u (mean combine).
double srw_probability(const Graph& g, int u, const EventSpec& event,
                       const BoostLimits& limits = {});

/// Potential sequence Phi^{(0..t)} with Phi^{(i)} = sum over length-i
/// trajectory prefixes x of q_{x,S}^{1/gamma} * P(SRW prefix = x), where q is
/// the max-boost value. Walks the full trajectory tree; horizon is capped.
std::vector<double> phi_diagnostic(const Graph& g, int u, const EventSpec& event,
                                   const BoostLimits& limits = {});

/// Value layers of the factorized DP for set events: layers[tau][x] is the
/// mode-optimal probability of the event with tau steps remaining from x
/// (for HitSetByT conditioned on not having hit yet). Used to drive
/// boosted-hitting rules step by step.
std::vector<std::vector<double>> event_dp_layers(const Graph& g, const EventSpec& event,
                                                 ChoiceMode mode,
                                                 const BoostLimits& limits = {});

}  // namespace crw
