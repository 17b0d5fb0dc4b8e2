// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "bidsel/errors.hpp"

namespace bidsel {

namespace {

int effective_capacity(const Instance& inst) {
  const int n = inst.size();
  return std::min(n, inst.capacity().value_or(n));
}

Subset subset_of_mask(unsigned mask) {
  Subset s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s.push_back(i);
  }
  return s;
}

}  // namespace

bool subset_lex_less(const Subset& a, const Subset& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SelectionOutcome select_ap_capacity(const Instance& inst, double r) {
  const int n = inst.size();
  const int m = effective_capacity(inst);
  std::vector<int> by_accept(static_cast<std::size_t>(n));
  std::iota(by_accept.begin(), by_accept.end(), 0);
  // Acceptance-probability ties go to the bidder who can pay more; the
  // anonymous-price revenue is unchanged but the reserve auction run on the
  // selected set never loses by it.
  std::stable_sort(by_accept.begin(), by_accept.end(), [&](int a, int b) {
    const double qa = inst.dist(a).accept_prob(r);
    const double qb = inst.dist(b).accept_prob(r);
    if (qa != qb) return qa > qb;
    return inst.dist(a).max_value() > inst.dist(b).max_value();
  });
  SelectionOutcome out;
  out.selected.assign(by_accept.begin(), by_accept.begin() + m);
  std::sort(out.selected.begin(), out.selected.end());
  out.reserve = r;
  out.revenue = ap_revenue(inst, out.selected, r);
  return out;
}

SelectionOutcome select_ap_capacity_opt(const Instance& inst) {
  SelectionOutcome best;
  bool first = true;
  for (double r : build_price_grid(inst)) {
    SelectionOutcome cur = select_ap_capacity(inst, r);
    if (first || cur.revenue > best.revenue) best = std::move(cur);
    first = false;
  }
  return best;
}

SelectionOutcome select_ar_capacity(const Instance& inst) {
  SelectionOutcome out = select_ap_capacity_opt(inst);
  out.revenue = ar_revenue(inst, out.selected, out.reserve);
  out.ar_best = ar_optimal(inst, out.selected).revenue;
  out.claimed_factor = kReservePricingRatio;
  return out;
}

SelectionOutcome select_spp_capacity(const Instance& inst) {
  const int n = inst.size();
  const int m = effective_capacity(inst);
  // g[i][k]: best revenue from bidders i.. with k offers left. An offer
  // consumes budget whether or not it sells.
  std::vector<std::vector<double>> g(static_cast<std::size_t>(n) + 1,
                                     std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  std::vector<std::vector<double>> price(
      static_cast<std::size_t>(n),
      std::vector<double>(static_cast<std::size_t>(m) + 1, -1.0));  // < 0: skip
  for (int i = n; i-- > 0;) {
    const ValueDistribution& d = inst.dist(i);
    for (int k = 0; k <= m; ++k) {
      double best = g[i + 1][k];  // skip bidder i; wins ties
      double best_p = -1.0;
      if (k > 0) {
        for (double p : d.support()) {
          const double v = spp_step(d, p, g[i + 1][k - 1]);
          if (v > best) {
            best = v;
            best_p = p;
          }
        }
      }
      g[i][k] = best;
      price[i][k] = best_p;
    }
  }
  SelectionOutcome out;
  out.revenue = g[0][m];
  out.claimed_factor = 2.0;
  for (int i = 0, k = m; i < n; ++i) {
    if (price[i][k] >= 0.0) {
      out.selected.push_back(i);
      out.plan.order.push_back(i);
      out.plan.prices.push_back(price[i][k]);
      --k;
    }
  }
  return out;
}

SelectionOutcome select_myerson_greedy(const Instance& inst) {
  const int n = inst.size();
  const int m = effective_capacity(inst);
  const std::vector<ValueDistribution> transformed = virtual_transform_all(inst);
  SelectionOutcome out;
  out.claimed_factor = kGreedyFactor;
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int round = 0; round < m; ++round) {
    int pick = -1;
    double pick_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (in[static_cast<std::size_t>(i)]) continue;
      Subset trial = out.selected;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), i), i);
      const double v = myerson_revenue_cached(transformed, trial);
      if (v > pick_value) {
        pick_value = v;
        pick = i;
      }
    }
    in[static_cast<std::size_t>(pick)] = true;
    out.selected.insert(
        std::lower_bound(out.selected.begin(), out.selected.end(), pick), pick);
    out.revenue = pick_value;
  }
  if (out.selected.empty()) out.revenue = 0.0;
  return out;
}

BruteForceOutcome brute_force_capacity(const Instance& inst, Objective obj,
                                       std::optional<double> fixed_r) {
  const int n = inst.size();
  const int cap = obj == Objective::kSpp ? kBruteSppMaxN : kBruteMaxN;
  if (n > cap) {
    throw CapExceeded("brute_force_capacity: instance above size cap");
  }
  const int m = effective_capacity(inst);
  std::vector<ValueDistribution> transformed;
  if (obj == Objective::kMyer) transformed = virtual_transform_all(inst);

  BruteForceOutcome best;  // empty set earns 0 under every objective
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > m) continue;
    const Subset s = subset_of_mask(mask);
    double value = 0.0;
    double reserve = 0.0;
    switch (obj) {
      case Objective::kAp:
        if (fixed_r) {
          reserve = *fixed_r;
          value = ap_revenue(inst, s, reserve);
        } else {
          const PriceOpt po = ap_optimal(inst, s);
          reserve = po.reserve;
          value = po.revenue;
        }
        break;
      case Objective::kAr:
        if (fixed_r) {
          reserve = *fixed_r;
          value = ar_revenue(inst, s, reserve);
        } else {
          const PriceOpt po = ar_optimal(inst, s);
          reserve = po.reserve;
          value = po.revenue;
        }
        break;
      case Objective::kSpa:
        value = ar_revenue(inst, s, 0.0);
        break;
      case Objective::kSppFixedOrder:
        value = spp_optimal_fixed_order(inst, s).revenue;
        break;
      case Objective::kSpp:
        value = spp_optimal(inst, s, s.size()).revenue;
        break;
      case Objective::kMyer:
        value = myerson_revenue_cached(transformed, s);
        break;
    }
    if (value > best.value ||
        (value == best.value && subset_lex_less(s, best.best))) {
      best.best = s;
      best.value = value;
      best.reserve = reserve;
    }
  }
  return best;
}

}  // namespace bidsel
