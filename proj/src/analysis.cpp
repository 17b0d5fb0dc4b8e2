// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bidsel/auction.hpp"
#include "bidsel/capacity.hpp"
#include "bidsel/errors.hpp"

namespace bidsel {

std::vector<double> xos_coefficients(const Instance& inst, const Subset& s,
                                     double r) {
  const std::size_t n = s.size();
  if (static_cast<int>(n) > kXosMaxSet) {
    throw CapExceeded("xos_coefficients: set above size cap");
  }
  std::uint64_t joint = 1;
  for (int i : s) {
    joint *= inst.dist(i).size();
    if (joint > kXosMaxJoint) {
      throw CapExceeded("xos_coefficients: joint support above cap");
    }
  }
  std::vector<double> coeff(n, 0.0);
  if (n == 0) return coeff;

  std::vector<std::size_t> idx(n, 0);
  while (true) {
    double prob = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      prob *= inst.dist(s[k]).mass()[idx[k]];
    }
    // Winner: highest value, lowest position among ties.
    std::size_t win = 0;
    double vmax = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = inst.dist(s[k]).support()[idx[k]];
      if (v > vmax) {
        vmax = v;
        win = k;
      }
    }
    if (vmax >= r) {
      double price = r;  // payment: second-highest among the rest and r
      for (std::size_t k = 0; k < n; ++k) {
        if (k == win) continue;
        price = std::max(price, inst.dist(s[k]).support()[idx[k]]);
      }
      coeff[win] += prob * price;
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == inst.dist(s[k]).size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return coeff;
}

XosCheck check_xos(const Instance& inst, const Subset& s) {
  XosCheck out;
  const PriceOpt po = ar_optimal(inst, s);
  out.r_star = po.reserve;
  out.coeff = xos_coefficients(inst, s, po.reserve);
  double sum = 0.0;
  for (double a : out.coeff) sum += a;
  out.identity_gap = std::abs(sum - po.revenue);

  out.min_domination_slack = std::numeric_limits<double>::infinity();
  const std::size_t n = s.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Subset t;
    double lower = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) {
        t.push_back(s[k]);
        lower += out.coeff[k];
      }
    }
    const double slack = ar_optimal(inst, t).revenue - lower;
    if (slack < out.min_domination_slack) {
      out.min_domination_slack = slack;
      out.worst_subset = t;
    }
  }
  return out;
}

std::vector<SubViolation> check_submodularity(const Instance& inst,
                                              const Subset& s,
                                              SubEvaluator eval, double r) {
  const std::size_t n = s.size();
  if (static_cast<int>(n) > kSubmodMaxSet) {
    throw CapExceeded("check_submodularity: set above size cap");
  }
  std::vector<ValueDistribution> transformed;
  if (eval == SubEvaluator::kMyerson) transformed = virtual_transform_all(inst);

  std::vector<double> f(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Subset t;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) t.push_back(s[k]);
    }
    switch (eval) {
      case SubEvaluator::kApFixedR:
        f[mask] = ap_revenue(inst, t, r);
        break;
      case SubEvaluator::kArFixedR:
        f[mask] = ar_revenue(inst, t, r);
        break;
      case SubEvaluator::kArOptimal:
        f[mask] = ar_optimal(inst, t).revenue;
        break;
      case SubEvaluator::kMyerson:
        f[mask] = myerson_revenue_cached(transformed, t);
        break;
    }
  }

  std::vector<SubViolation> violations;
  auto members = [&](unsigned mask) {
    Subset t;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) t.push_back(s[k]);
    }
    return t;
  };
  for (unsigned u = 1; u < (1u << n); ++u) {
    // Proper sub-masks t of u, then each j outside u.
    for (unsigned t = (u - 1) & u;; t = (t - 1) & u) {
      for (std::size_t k = 0; k < n; ++k) {
        const unsigned bit = 1u << k;
        if (u & bit) continue;
        const double m_large = f[u | bit] - f[u];
        const double m_small = f[t | bit] - f[t];
        if (m_large > m_small + kSubmodTol) {
          violations.push_back(
              {members(t), members(u), s[k], m_small, m_large});
        }
      }
      if (t == 0) break;
    }
  }
  return violations;
}

double best_singleton_apc(const Instance& inst) {
  double best = 0.0;
  bool first = true;
  for (int i = 0; i < inst.size(); ++i) {
    const Subset one{i};
    for (double r : build_price_grid(inst, one)) {
      const double profit = ap_revenue(inst, one, r) - inst.cost(i);
      if (first || profit > best) best = profit;
      first = false;
    }
  }
  return best;
}

double best_prefix_arc(const Instance& inst) {
  double best = 0.0;  // inviting nobody
  Subset s;
  double cost = 0.0;
  for (int i = 0; i < inst.size(); ++i) {
    s.push_back(i);
    cost += inst.cost(i);
    best = std::max(best, ar_optimal(inst, s).revenue - cost);
  }
  return best;
}

Instance ar_counterexample_instance() {
  const ValueDistribution d({1.0, 1.01}, {0.99, 0.01});
  std::vector<Bidder> bidders;
  for (int i = 0; i < 3; ++i) {
    bidders.push_back(Bidder{"b" + std::to_string(i), d, std::nullopt});
  }
  return Instance(std::move(bidders), std::nullopt);
}

Instance subset_sum_instance(const std::vector<double>& weights, double target) {
  if (weights.empty() || !(target > 0.0) || !std::isfinite(target)) {
    throw std::invalid_argument("subset_sum_instance: need weights and target > 0");
  }
  std::vector<Bidder> bidders;
  bidders.reserve(weights.size());
  const double unit_cost = std::exp(-target);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("subset_sum_instance: weights must be > 0");
    }
    const double miss = std::exp(-w);
    bidders.push_back(Bidder{"b" + std::to_string(i),
                             ValueDistribution({0.0, 1.0}, {miss, 1.0 - miss}),
                             unit_cost * w});
  }
  return Instance(std::move(bidders), std::nullopt);
}

namespace {

// Pointwise maximum of the family (1 - (i+1)/v)^(1/i) over i = 1..n.
double gap_cdf(double v, int n) {
  double best = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (v < static_cast<double>(i + 1)) continue;
    const double g = std::pow(1.0 - static_cast<double>(i + 1) / v,
                              1.0 / static_cast<double>(i));
    best = std::max(best, g);
  }
  return best;
}

}  // namespace

Instance gap_instance(int n, int grid_size) {
  if (n < 2 || grid_size < 32) {
    throw std::invalid_argument("gap_instance: need n >= 2 and grid_size >= 32");
  }
  const double lo = 2.0;
  const double hi = 4.0 * n;
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int k = 0; k < grid_size; ++k) {
    grid[static_cast<std::size_t>(k)] =
        lo * std::pow(hi / lo, static_cast<double>(k) / (grid_size - 1));
  }
  std::vector<double> support, mass;
  double acc = 0.0;
  for (int k = 0; k + 1 < grid_size; ++k) {
    const double m = gap_cdf(grid[static_cast<std::size_t>(k) + 1], n) -
                     gap_cdf(grid[static_cast<std::size_t>(k)], n);
    if (m > 0.0) {
      support.push_back(grid[static_cast<std::size_t>(k)]);
      mass.push_back(m);
      acc += m;
    }
  }
  // The top atom absorbs the tail exactly so masses sum to 1 bitwise.
  support.push_back(hi);
  mass.push_back(1.0 - acc);
  ValueDistribution d(std::move(support), std::move(mass),
                      static_cast<std::size_t>(grid_size));
  std::vector<Bidder> bidders;
  bidders.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bidders.push_back(Bidder{"b" + std::to_string(i), d, 1.0});
  }
  return Instance(std::move(bidders), std::nullopt);
}

}  // namespace bidsel
