// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_ANALYSIS_HPP
#define BIDSEL_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "bidsel/instance.hpp"

namespace bidsel {

inline constexpr int kXosMaxSet = 8;
inline constexpr std::uint64_t kXosMaxJoint = 2'000'000;
inline constexpr int kSubmodMaxSet = 6;
// Submodularity violations smaller than this are treated as float noise.
inline constexpr double kSubmodTol = 1e-12;

// Additive decomposition of the reserve-auction revenue at reserve r: bidder
// i's coefficient is the expected payment on the joint-value events where i
// wins (highest value, lowest index among tied, value >= r). Coefficients sum
// to the auction revenue, and restricting any subset keeps at least its
// summed coefficients, certifying the revenue function is XOS on tie-free
// instances. Exact enumeration of the joint support; |s| <= kXosMaxSet and
// at most kXosMaxJoint joint points.
std::vector<double> xos_coefficients(const Instance& inst, const Subset& s,
                                     double r);

struct XosCheck {
  double r_star = 0.0;
  std::vector<double> coeff;      // aligned with s
  double identity_gap = 0.0;      // |sum coeff - revenue at r_star|
  double min_domination_slack = 0.0;  // min over subsets T of AR(T) - sum_T coeff
  Subset worst_subset;
};

// Coefficients at the set's own optimal reserve, plus the identity and
// domination slacks over every subset.
XosCheck check_xos(const Instance& inst, const Subset& s);

enum class SubEvaluator { kApFixedR, kArFixedR, kArOptimal, kMyerson };

struct SubViolation {
  Subset small;   // T
  Subset large;   // U, a strict superset of T
  int added = 0;  // j outside U
  double marginal_small = 0.0;  // f(T+j) - f(T)
  double marginal_large = 0.0;  // f(U+j) - f(U)
};

// All diminishing-returns violations of the evaluator over subsets of s:
// pairs T subset of U with f(U+j) - f(U) > f(T+j) - f(T) + kSubmodTol.
// |s| <= kSubmodMaxSet. r only matters for the fixed-reserve evaluators.
std::vector<SubViolation> check_submodularity(const Instance& inst,
                                              const Subset& s,
                                              SubEvaluator eval, double r = 0.0);

// Best profit of inviting exactly one bidder: max over bidders and grid
// prices of price revenue minus that bidder's cost.
double best_singleton_apc(const Instance& inst);

// Best cost-model reserve-auction profit over prefix sets {0..k-1}. For
// pools of identically distributed, identically priced bidders the profit
// depends only on cardinality, so this equals the true subset optimum
// without enumeration.
double best_prefix_arc(const Instance& inst);

// Three i.i.d. bidders valued 1 w.p. 0.99 and 1.01 w.p. 0.01. At reserve 1
// the marginal revenue of adding a bidder grows with the set — the standard
// witness that reserve-auction revenue is not submodular, while the
// anonymous-price and optimal-auction values on the same instance are.
Instance ar_counterexample_instance();

// Encodes a subset-sum question as a cost selection instance: bidder i is
// worth 1 with probability 1 - e^{-w_i} at cost w_i e^{-W}. The profit at
// price 1 over set S is h(sum of w over S) for the strictly unimodal
// h(x) = 1 - e^{-x} - x e^{-W}, so the best profit reaches
// 1 - e^{-W} - W e^{-W} exactly when some subset of weights sums to W.
Instance subset_sum_instance(const std::vector<double>& weights, double target);

// n i.i.d. bidders at unit cost whose value law is the pointwise-max of the
// family (1 - (i+1)/v)^(1/i), discretized on a geometric price grid over
// [2, 4n] with the tail mass on the top atom. Any anonymous price earns at
// most i+1 from the best i bidders (profit <= 1), while the second-price
// surplus over cost grows with n.
Instance gap_instance(int n, int grid_size = 256);

}  // namespace bidsel

#endif  // BIDSEL_ANALYSIS_HPP
