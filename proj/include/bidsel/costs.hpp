// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_COSTS_HPP
#define BIDSEL_COSTS_HPP

#include <optional>
#include <vector>

#include "bidsel/capacity.hpp"
#include "bidsel/instance.hpp"

namespace bidsel {

inline constexpr int kPartitionMaxSet = 6;
inline constexpr int kPartitionMaxParts = 4;

// Per-bidder bookkeeping at a fixed price r. The weight w turns the
// no-sale probability multiplicative structure additive:
// Pr[nobody in S clears r] = exp(-sum of w over S).
struct WeightEntry {
  double q = 0.0;      // Pr[v >= r]
  double cdfb = 0.0;   // Pr[v < r] = exp(-w)
  double w = 0.0;      // -ln(cdfb); +infinity when q = 1
  double cost = 0.0;
  bool infinite = false;  // q = 1 at this price
  // Bidders whose singleton profit curve r(1 - e^{-w x}) - c x decreases at
  // x = 1; rounding them down is unsafe, so they are tried one at a time.
  bool special = false;
  bool pruned = false;  // singleton profit r*q - c < 0 (never in an optimum)
};

std::vector<WeightEntry> compute_weights(const Instance& inst, double r);

// Fractional relaxation of profit at price r over x in [0,1]^S with an
// outside no-sale factor q:  r(1 - q e^{-sum w_i x_i}) - sum c_i x_i.
struct FrSolution {
  std::vector<double> x;
  double objective = 0.0;
  int frac_index = -1;  // position in the input arrays, -1 if integral
  // Objective with the fractional coordinate rounded down to 0.
  double rounded_objective = 0.0;
};

// Exact maximizer of the concave relaxation: one greedy pass in descending
// w/c order saturates precisely the coordinates above the KKT ratio
// threshold, leaving at most one fractional. Weights must be finite.
FrSolution solve_fr(const std::vector<double>& w, const std::vector<double>& cost,
                    double q, double r);

struct CostOutcome {
  Subset selected;
  double reserve = 0.0;
  double revenue = 0.0;
  double cost = 0.0;
  double profit = 0.0;
  double claimed_factor = 2.0;
};

// Diagnostics for one fixed-r selection: every relaxation run and the
// rounding loss it incurred, for invariant checks.
struct ApcDiag {
  struct FrRun {
    int t = -1;  // index of the special bidder joined in, -1 for none
    Subset rounded_set;
    double fr_value = 0.0;
    double fr_rounded = 0.0;
  };
  std::vector<FrRun> fr_runs;
  double best_singleton_profit = 0.0;
  bool has_singleton = false;
};

// Profit-maximizing set under one anonymous price r, within factor 2:
// prune loss-making singletons, solve the relaxation once with no special
// bidder and once per special bidder, round down, and keep the most
// profitable candidate (also considering the best singleton and the empty
// set; ties prefer the lexicographically smaller set).
CostOutcome select_apc_fixed_r(const Instance& inst, double r,
                               ApcDiag* diag = nullptr);

// Factor-2 profit selection under anonymous pricing: best fixed-r outcome
// over the full price grid (ties prefer the smaller price).
CostOutcome select_apc(const Instance& inst);

struct ArcOutcome {
  CostOutcome apc;       // the selected set and price
  double revenue_ar = 0.0;  // second-price revenue at reserve = that price
  double profit_ar = 0.0;
};

// Run the anonymous-pricing selection, then sell by second-price with the
// chosen price as reserve. The reserve auction only adds revenue, and the
// surplus ratio of the true optimum bounds the loss.
ArcOutcome select_arc(const Instance& inst);

enum class CostObjective { kApc, kArc };

struct BruteForceCostOutcome {
  Subset best;
  double reserve = 0.0;
  double profit = 0.0;
};

// Best profit over every subset, each at its optimal price/reserve (or at
// fixed_r when given). n <= kBruteMaxN.
BruteForceCostOutcome brute_force_cost(const Instance& inst, CostObjective obj,
                                       std::optional<double> fixed_r = {});

// Surplus ratio of the brute-forced optimum: delta = revenue/cost - 1.
// A zero-cost optimum has delta = +infinity, group count 2, factor 8.
struct DeltaReport {
  BruteForceCostOutcome opt;
  double opt_cost = 0.0;
  double delta = 0.0;
  long long ell = 0;               // ceil(2(1+delta)/delta)
  double implied_factor = 0.0;     // 4 * ell
};

DeltaReport arc_delta_report(const Instance& inst);

// Search for a partition of s into at most ell groups whose summed optimal
// anonymous-price revenues reach (1 - 1/ell) of the reserve-auction revenue
// of s at reserve r. One always exists: a uniformly random assignment
// achieves the bound in expectation. |s| <= kPartitionMaxSet, ell <=
// kPartitionMaxParts.
struct PartitionWitness {
  bool found = false;
  std::vector<Subset> groups;
  double sum_ap = 0.0;
  double bound = 0.0;
};

PartitionWitness verify_partition_bound(const Instance& inst, const Subset& s,
                                        double r, int ell);

}  // namespace bidsel

#endif  // BIDSEL_COSTS_HPP
