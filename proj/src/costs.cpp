// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/costs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bidsel/errors.hpp"

namespace bidsel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<WeightEntry> compute_weights(const Instance& inst, double r) {
  std::vector<WeightEntry> out(static_cast<std::size_t>(inst.size()));
  for (int i = 0; i < inst.size(); ++i) {
    WeightEntry& e = out[static_cast<std::size_t>(i)];
    e.cdfb = inst.dist(i).cdf_below(r);
    e.q = 1.0 - e.cdfb;
    e.cost = inst.cost(i);
    if (e.cdfb == 0.0) {
      e.infinite = true;
      e.w = kInf;
    } else {
      e.w = -std::log(e.cdfb);
      e.special = r * e.cdfb * e.w < e.cost;
    }
    e.pruned = r * e.q - e.cost < 0.0;
  }
  return out;
}

FrSolution solve_fr(const std::vector<double>& w, const std::vector<double>& cost,
                    double q, double r) {
  const std::size_t n = w.size();
  if (cost.size() != n) {
    throw std::invalid_argument("solve_fr: weight/cost size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0 || !std::isfinite(cost[i]) ||
        cost[i] < 0.0) {
      throw std::invalid_argument("solve_fr: weights/costs must be finite and >= 0");
    }
  }
  if (!(q >= 0.0 && q <= 1.0) || !(r >= 0.0)) {
    throw std::invalid_argument("solve_fr: q in [0,1] and r >= 0 required");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](std::size_t i) {
    if (w[i] == 0.0) return -1.0;  // irrelevant coordinate, keep last
    return cost[i] > 0.0 ? w[i] / cost[i] : kInf;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });

  FrSolution sol;
  sol.x.assign(n, 0.0);
  double survival = 1.0;       // e^{-W} over fully included coordinates
  double cost_integral = 0.0;  // their summed cost
  double frac_cost = 0.0;
  double frac_survival = 1.0;
  for (std::size_t i : order) {
    if (w[i] == 0.0) continue;  // moves neither revenue nor (paid) cost
    const double ew = std::exp(-w[i]);
    // Marginal value of pushing x_i at the current exposure level.
    if (r * q * w[i] * survival * ew >= cost[i]) {
      sol.x[i] = 1.0;
      survival *= ew;
      cost_integral += cost[i];
      continue;
    }
    if (r * q * w[i] * survival > cost[i]) {
      // Interior stationary point: marginal revenue equals cost rate.
      double xi = std::log(r * q * w[i] * survival / cost[i]) / w[i];
      if (xi >= 1.0) {  // float guard, the branch above nearly fired
        sol.x[i] = 1.0;
        survival *= ew;
        cost_integral += cost[i];
        continue;
      }
      if (xi > 0.0) {
        sol.x[i] = xi;
        sol.frac_index = static_cast<int>(i);
        frac_cost = cost[i] * xi;
        frac_survival = std::exp(-w[i] * xi);
      }
    }
    break;  // every later ratio is smaller; their marginals are negative too
  }
  sol.rounded_objective = r * (1.0 - q * survival) - cost_integral;
  sol.objective =
      r * (1.0 - q * survival * frac_survival) - cost_integral - frac_cost;
  return sol;
}

namespace {

struct Candidate {
  Subset set;
  double profit = 0.0;
};

}  // namespace

CostOutcome select_apc_fixed_r(const Instance& inst, double r, ApcDiag* diag) {
  const std::vector<WeightEntry> we = compute_weights(inst, r);

  // Non-special finite-weight pool the relaxation runs on.
  std::vector<int> pool;
  std::vector<int> specials;
  int cheapest_certain = -1;  // cheapest bidder with q = 1
  int best_single = -1;
  double best_single_profit = 0.0;
  for (int i = 0; i < inst.size(); ++i) {
    const WeightEntry& e = we[static_cast<std::size_t>(i)];
    if (e.pruned) continue;
    const double single = r * e.q - e.cost;
    if (best_single < 0 || single > best_single_profit) {
      best_single = i;
      best_single_profit = single;
    }
    if (e.infinite) {
      if (cheapest_certain < 0 ||
          e.cost < we[static_cast<std::size_t>(cheapest_certain)].cost) {
        cheapest_certain = i;
      }
    } else if (e.special) {
      specials.push_back(i);
    } else {
      pool.push_back(i);
    }
  }
  if (diag) {
    diag->fr_runs.clear();
    diag->best_singleton_profit = best_single_profit;
    diag->has_singleton = best_single >= 0;
  }

  std::vector<double> wpool, cpool;
  wpool.reserve(pool.size());
  cpool.reserve(pool.size());
  for (int i : pool) {
    wpool.push_back(we[static_cast<std::size_t>(i)].w);
    cpool.push_back(we[static_cast<std::size_t>(i)].cost);
  }

  std::vector<Candidate> candidates;
  candidates.push_back({{}, 0.0});
  if (best_single >= 0) {
    candidates.push_back({{best_single}, best_single_profit});
  }

  // One relaxation run per outside factor q: q = 1 (no special bidder), the
  // survival factor of each special bidder, and q = 0 for the cheapest
  // always-accepting bidder (whose presence alone caps revenue at r).
  std::vector<std::pair<int, double>> runs;
  runs.emplace_back(-1, 1.0);
  for (int t : specials) runs.emplace_back(t, we[static_cast<std::size_t>(t)].cdfb);
  if (cheapest_certain >= 0) runs.emplace_back(cheapest_certain, 0.0);

  for (const auto& [t, q] : runs) {
    const FrSolution sol = solve_fr(wpool, cpool, q, r);
    Subset set;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (sol.x[j] == 1.0) set.push_back(pool[j]);
    }
    if (t >= 0) set.push_back(t);
    std::sort(set.begin(), set.end());
    if (diag) {
      diag->fr_runs.push_back({t, set, sol.objective, sol.rounded_objective});
    }
    const double profit = ap_revenue(inst, set, r) - inst.total_cost(set);
    candidates.push_back({std::move(set), profit});
  }

  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (c.profit > best->profit ||
        (c.profit == best->profit && subset_lex_less(c.set, best->set))) {
      best = &c;
    }
  }
  CostOutcome out;
  out.selected = best->set;
  out.reserve = r;
  out.revenue = ap_revenue(inst, out.selected, r);
  out.cost = inst.total_cost(out.selected);
  out.profit = best->profit;
  return out;
}

CostOutcome select_apc(const Instance& inst) {
  CostOutcome best;
  bool first = true;
  for (double r : build_price_grid(inst)) {
    CostOutcome cur = select_apc_fixed_r(inst, r);
    if (first || cur.profit > best.profit) best = std::move(cur);
    first = false;
  }
  return best;
}

ArcOutcome select_arc(const Instance& inst) {
  ArcOutcome out;
  out.apc = select_apc(inst);
  out.revenue_ar = ar_revenue(inst, out.apc.selected, out.apc.reserve);
  out.profit_ar = out.revenue_ar - out.apc.cost;
  return out;
}

BruteForceCostOutcome brute_force_cost(const Instance& inst, CostObjective obj,
                                       std::optional<double> fixed_r) {
  const int n = inst.size();
  if (n > kBruteMaxN) {
    throw CapExceeded("brute_force_cost: instance above size cap");
  }
  const unsigned full = (1u << n);
  std::vector<double> cost_sum(full, 0.0);
  for (unsigned mask = 1; mask < full; ++mask) {
    const int i = std::countr_zero(mask);
    cost_sum[mask] = cost_sum[mask & (mask - 1)] + inst.cost(i);
  }

  BruteForceCostOutcome best;  // empty set: profit 0
  auto challenge = [&](unsigned mask, double r, double profit) {
    if (profit > best.profit) {
      best.profit = profit;
      best.reserve = r;
      Subset s;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      best.best = std::move(s);
    } else if (profit == best.profit && r == best.reserve) {
      Subset s;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      if (subset_lex_less(s, best.best)) best.best = std::move(s);
    }
  };

  if (obj == CostObjective::kApc) {
    std::vector<double> grid =
        fixed_r ? std::vector<double>{*fixed_r} : build_price_grid(inst);
    std::vector<double> none(full);
    std::vector<double> cdfb(static_cast<std::size_t>(n));
    for (double r : grid) {
      for (int i = 0; i < n; ++i) {
        cdfb[static_cast<std::size_t>(i)] = inst.dist(i).cdf_below(r);
      }
      none[0] = 1.0;
      for (unsigned mask = 1; mask < full; ++mask) {
        const int i = std::countr_zero(mask);
        none[mask] = none[mask & (mask - 1)] * cdfb[static_cast<std::size_t>(i)];
      }
      for (unsigned mask = 0; mask < full; ++mask) {
        challenge(mask, r, r * (1.0 - none[mask]) - cost_sum[mask]);
      }
    }
    return best;
  }

  for (unsigned mask = 1; mask < full; ++mask) {
    Subset s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    double revenue;
    double r;
    if (fixed_r) {
      r = *fixed_r;
      revenue = ar_revenue(inst, s, r);
    } else {
      const PriceOpt po = ar_optimal(inst, s);
      r = po.reserve;
      revenue = po.revenue;
    }
    challenge(mask, r, revenue - cost_sum[mask]);
  }
  return best;
}

DeltaReport arc_delta_report(const Instance& inst) {
  DeltaReport rep;
  rep.opt = brute_force_cost(inst, CostObjective::kArc);
  rep.opt_cost = inst.total_cost(rep.opt.best);
  if (rep.opt_cost == 0.0) {
    rep.delta = kInf;
  } else {
    rep.delta = (rep.opt.profit + rep.opt_cost) / rep.opt_cost - 1.0;
  }
  if (rep.delta > 0.0) {
    rep.ell = static_cast<long long>(std::ceil(2.0 / rep.delta + 2.0));
    rep.implied_factor = 4.0 * static_cast<double>(rep.ell);
  } else {
    rep.ell = 0;
    rep.implied_factor = kInf;
  }
  return rep;
}

PartitionWitness verify_partition_bound(const Instance& inst, const Subset& s,
                                        double r, int ell) {
  if (ell < 2 || ell > kPartitionMaxParts) {
    throw std::invalid_argument("verify_partition_bound: ell out of range");
  }
  if (static_cast<int>(s.size()) > kPartitionMaxSet) {
    throw CapExceeded("verify_partition_bound: set above size cap");
  }
  PartitionWitness wit;
  wit.bound = (1.0 - 1.0 / static_cast<double>(ell)) * ar_revenue(inst, s, r);
  if (s.empty()) {
    wit.found = wit.bound <= kRevTol;
    return wit;
  }
  const std::size_t n = s.size();
  std::vector<int> assign(n, 0);
  double best_sum = -kInf;
  std::vector<Subset> best_groups;
  // Restricted-growth enumeration: each distinct grouping appears once.
  std::function<bool(std::size_t, int)> walk = [&](std::size_t k, int used) {
    if (k == n) {
      std::vector<Subset> groups(static_cast<std::size_t>(used));
      for (std::size_t j = 0; j < n; ++j) {
        groups[static_cast<std::size_t>(assign[j])].push_back(s[j]);
      }
      double sum = 0.0;
      for (const Subset& g : groups) sum += ap_optimal(inst, g).revenue;
      if (sum > best_sum) {
        best_sum = sum;
        best_groups = groups;
      }
      return sum >= wit.bound - kRevTol;
    }
    const int top = std::min(used, ell - 1);
    for (int g = 0; g <= top; ++g) {
      assign[k] = g;
      if (walk(k + 1, std::max(used, g + 1))) return true;
    }
    return false;
  };
  wit.found = walk(0, 0);
  wit.groups = best_groups;
  wit.sum_ap = best_sum;
  return wit;
}

}  // namespace bidsel
