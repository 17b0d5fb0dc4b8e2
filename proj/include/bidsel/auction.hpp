// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_AUCTION_HPP
#define BIDSEL_AUCTION_HPP

#include <cstddef>
#include <vector>

#include "bidsel/instance.hpp"

namespace bidsel {

// Order-enumeration cap for sequential-pricing optimization.
inline constexpr std::size_t kSppEnumCap = 8;

// Ratio between the optimal-reserve second-price revenue and the optimal
// anonymous-price revenue is at most pi^2/6 for any bidder set.
inline constexpr double kReservePricingRatio = 1.6449340668482264;

using DistView = std::vector<const ValueDistribution*>;

DistView make_view(const Instance& inst, const Subset& s);

// Tail probabilities of the highest and second-highest value at every point
// of the union support grid (ascending). Requires a nonempty view.
struct OrderStats {
  std::vector<double> values;
  std::vector<double> p_max_ge;     // Pr[max_i v_i >= values[k]]
  std::vector<double> p_second_ge;  // Pr[second-highest v >= values[k]]

  // Pr[max >= r] for arbitrary r >= 0; exact because values only move at
  // atoms, so the tail is constant between adjacent grid points.
  double max_ge_at(double r) const;
};

OrderStats order_stats(const DistView& view);
OrderStats order_stats(const Instance& inst, const Subset& s);

struct PriceOpt {
  double reserve = 0.0;
  double revenue = 0.0;
};

// Post one anonymous price r to every bidder in the set; revenue is
// r * Pr[someone accepts].
double ap_revenue(const DistView& view, double r);
double ap_revenue(const Instance& inst, const Subset& s, double r);
// Best anonymous price over the set's own grid; ties prefer the smaller price.
PriceOpt ap_optimal(const Instance& inst, const Subset& s);

// Second-price auction with anonymous reserve r: the item goes to the highest
// bidder with value >= r, at price max(r, second-highest value). r = 0 is the
// plain second-price auction.
double ar_revenue(const DistView& view, double r);
double ar_revenue(const Instance& inst, const Subset& s, double r);
double ar_revenue_at(const OrderStats& os, double r);
PriceOpt ar_optimal(const Instance& inst, const Subset& s);

// One step of sequential pricing: offer price p, fall through to `cont` when
// the bidder declines. Every sequential-pricing evaluator folds this same
// expression so equal decision chains produce bit-identical revenues.
inline double spp_step(const ValueDistribution& d, double p, double cont) {
  return p * d.accept_prob(p) + d.cdf_below(p) * cont;
}

// Sequential posted pricing: visit bidders in order, offer each a personal
// price, first acceptor buys. A plan lists the visited bidders and their
// prices; bidders priced out entirely are simply not listed.
struct SppPlan {
  std::vector<int> order;      // instance indices, visit order
  std::vector<double> prices;  // aligned with order
};

struct SppResult {
  SppPlan plan;
  double revenue = 0.0;
};

double spp_revenue(const Instance& inst, const SppPlan& plan);

// Optimal prices for one fixed visit order, by backward induction. The price
// menu per bidder is its own support plus "skip" (offer nothing); within an
// atom gap revenue only grows toward the upper atom, so nothing off-menu can
// do better. Ties prefer skipping, then the smaller price.
SppResult spp_optimal_fixed_order(const Instance& inst,
                                  const std::vector<int>& order);

// Best order and prices over all |s|! visit orders; |s| <= cap or CapExceeded.
SppResult spp_optimal(const Instance& inst, const Subset& s,
                      std::size_t cap = kSppEnumCap);

// Ironed virtual-value transform. Maps each atom to the slope of the upper
// concave envelope of the revenue curve in quantile space, clamped at 0, and
// returns the distribution of that transformed value.
ValueDistribution virtual_transform(const ValueDistribution& d);
std::vector<ValueDistribution> virtual_transform_all(const Instance& inst);

// True when no ironing is needed: virtual values already nondecreasing.
bool is_regular(const ValueDistribution& d);

// Revenue of the optimal auction: expected positive part of the highest
// ironed virtual value.
double myerson_revenue(const Instance& inst, const Subset& s);
double myerson_revenue_cached(const std::vector<ValueDistribution>& transformed,
                              const Subset& s);

}  // namespace bidsel

#endif  // BIDSEL_AUCTION_HPP
