// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_CAPACITY_HPP
#define BIDSEL_CAPACITY_HPP

#include <optional>

#include "bidsel/auction.hpp"
#include "bidsel/instance.hpp"

namespace bidsel {

// Exhaustive-search size caps; exceeding them raises CapExceeded.
inline constexpr int kBruteMaxN = 16;
inline constexpr int kBruteSppMaxN = 10;

// Multiplicative guarantee of cardinality greedy on a monotone submodular
// objective: greedy * kGreedyFactor >= optimum.
inline constexpr double kGreedyFactor = 1.5819767068693265;  // e / (e - 1)

struct SelectionOutcome {
  Subset selected;
  double reserve = 0.0;  // anonymous price or reserve, when meaningful
  SppPlan plan;          // sequential pricing only
  double revenue = 0.0;
  // Guarantee g of the algorithm: g * revenue >= best achievable revenue
  // under the same format and capacity.
  double claimed_factor = 1.0;
  // Extra for the reserve-auction selector: revenue of the chosen set under
  // its own optimal reserve (the guarantee holds already at reserve above).
  double ar_best = 0.0;
};

// Keep the m bidders most likely to clear price r (ties prefer lower index).
// Exactly optimal for the anonymous-price objective at fixed r.
SelectionOutcome select_ap_capacity(const Instance& inst, double r);

// Sweep the full price grid; exactly optimal over (set, price) pairs.
SelectionOutcome select_ap_capacity_opt(const Instance& inst);

// Run the anonymous-price sweep, then sell to the chosen set by second-price
// with that price as reserve. Guarantee pi^2/6 against the best set under
// optimal-reserve second-price.
SelectionOutcome select_ar_capacity(const Instance& inst);

// Exact DP for sequential pricing in instance order with at most m offers;
// guarantee 2 against the best visiting order. Ties prefer skipping.
SelectionOutcome select_spp_capacity(const Instance& inst);

// Standard greedy on the optimal-auction revenue, m rounds; guarantee
// e/(e-1) by monotone submodularity.
SelectionOutcome select_myerson_greedy(const Instance& inst);

enum class Objective { kAp, kAr, kSpa, kSppFixedOrder, kSpp, kMyer };

struct BruteForceOutcome {
  Subset best;
  double value = 0.0;
  double reserve = 0.0;  // optimizing price/reserve where applicable
};

// Enumerate every subset within the capacity (all sizes when uncapacitated)
// and return the best under the objective; ties prefer the lexicographically
// smaller subset. fixed_r pins the price/reserve for kAp and kAr; otherwise
// each subset gets its own optimal price. n <= kBruteMaxN (kSpp: kBruteSppMaxN).
BruteForceOutcome brute_force_capacity(const Instance& inst, Objective obj,
                                       std::optional<double> fixed_r = {});

// True when a is lexicographically before b (both ascending index lists).
bool subset_lex_less(const Subset& a, const Subset& b);

}  // namespace bidsel

#endif  // BIDSEL_CAPACITY_HPP
