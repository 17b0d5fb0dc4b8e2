// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/auction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bidsel/errors.hpp"

namespace bidsel {

DistView make_view(const Instance& inst, const Subset& s) {
  DistView view;
  view.reserve(s.size());
  for (int i : s) view.push_back(&inst.dist(i));
  return view;
}

double OrderStats::max_ge_at(double r) const {
  auto it = std::lower_bound(values.begin(), values.end(), r);
  if (it == values.end()) return 0.0;
  return p_max_ge[static_cast<std::size_t>(it - values.begin())];
}

OrderStats order_stats(const DistView& view) {
  if (view.empty()) {
    throw std::invalid_argument("order_stats: empty bidder set");
  }
  OrderStats os;
  for (const ValueDistribution* d : view) {
    os.values.insert(os.values.end(), d->support().begin(), d->support().end());
  }
  std::sort(os.values.begin(), os.values.end());
  os.values.erase(std::unique(os.values.begin(), os.values.end()),
                  os.values.end());

  const std::size_t n = view.size();
  std::vector<double> below(n), pre(n + 1), suf(n + 1);
  os.p_max_ge.resize(os.values.size());
  os.p_second_ge.resize(os.values.size());
  for (std::size_t k = 0; k < os.values.size(); ++k) {
    const double u = os.values[k];
    for (std::size_t i = 0; i < n; ++i) below[i] = view[i]->cdf_below(u);
    pre[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * below[i];
    suf[n] = 1.0;
    for (std::size_t i = n; i-- > 0;) suf[i] = below[i] * suf[i + 1];
    const double none = pre[n];
    double exactly_one = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      exactly_one += (1.0 - below[i]) * pre[i] * suf[i + 1];
    }
    os.p_max_ge[k] = 1.0 - none;
    os.p_second_ge[k] = std::max(0.0, 1.0 - none - exactly_one);
  }
  return os;
}

OrderStats order_stats(const Instance& inst, const Subset& s) {
  return order_stats(make_view(inst, s));
}

double ap_revenue(const DistView& view, double r) {
  // Multiply no-sale factors in sorted order: subsets whose factor multisets
  // coincide then earn bit-identical revenue regardless of member identity,
  // which keeps optimizer-vs-enumeration equality checks exact under ties.
  std::vector<double> below;
  below.reserve(view.size());
  for (const ValueDistribution* d : view) below.push_back(d->cdf_below(r));
  std::sort(below.begin(), below.end());
  double none = 1.0;
  for (double b : below) none *= b;
  return r * (1.0 - none);
}

double ap_revenue(const Instance& inst, const Subset& s, double r) {
  return ap_revenue(make_view(inst, s), r);
}

PriceOpt ap_optimal(const Instance& inst, const Subset& s) {
  const DistView view = make_view(inst, s);
  PriceOpt best;  // r = 0 earns 0, always on the grid
  for (double r : build_price_grid(inst, s)) {
    const double rev = ap_revenue(view, r);
    if (rev > best.revenue) best = {r, rev};
  }
  return best;
}

double ar_revenue_at(const OrderStats& os, double r) {
  // E[payment] = r*Pr[sale] + integral over t > r of Pr[second-highest >= t];
  // the integrand is constant on each gap between adjacent support atoms.
  double rev = r * os.max_ge_at(r);
  for (std::size_t k = 0; k < os.values.size(); ++k) {
    const double u = os.values[k];
    if (u <= r) continue;
    const double lo = std::max(r, k > 0 ? os.values[k - 1] : r);
    rev += (u - lo) * os.p_second_ge[k];
  }
  return rev;
}

double ar_revenue(const DistView& view, double r) {
  if (view.empty()) return 0.0;
  return ar_revenue_at(order_stats(view), r);
}

double ar_revenue(const Instance& inst, const Subset& s, double r) {
  return ar_revenue(make_view(inst, s), r);
}

PriceOpt ar_optimal(const Instance& inst, const Subset& s) {
  if (s.empty()) return {};
  const OrderStats os = order_stats(inst, s);
  PriceOpt best;
  bool first = true;
  for (double r : build_price_grid(inst, s)) {
    const double rev = ar_revenue_at(os, r);
    if (first || rev > best.revenue) best = {r, rev};
    first = false;
  }
  return best;
}

double spp_revenue(const Instance& inst, const SppPlan& plan) {
  if (plan.order.size() != plan.prices.size()) {
    throw std::invalid_argument("spp_revenue: order/price size mismatch");
  }
  double rev = 0.0;
  double reach = 1.0;  // Pr[no earlier bidder accepted]
  for (std::size_t k = 0; k < plan.order.size(); ++k) {
    const ValueDistribution& d = inst.dist(plan.order[k]);
    const double p = plan.prices[k];
    rev += reach * p * d.accept_prob(p);
    reach *= d.cdf_below(p);
  }
  return rev;
}

SppResult spp_optimal_fixed_order(const Instance& inst,
                                  const std::vector<int>& order) {
  const std::size_t n = order.size();
  std::vector<double> chosen(n, -1.0);  // < 0 means skip
  double cont = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const ValueDistribution& d = inst.dist(order[k]);
    double best_offer = -std::numeric_limits<double>::infinity();
    double best_price = 0.0;
    for (double p : d.support()) {
      const double v = spp_step(d, p, cont);
      if (v > best_offer) {
        best_offer = v;
        best_price = p;
      }
    }
    if (best_offer > cont) {
      chosen[k] = best_price;
      cont = best_offer;
    }
  }
  SppResult res;
  res.revenue = cont;
  for (std::size_t k = 0; k < n; ++k) {
    if (chosen[k] >= 0.0) {
      res.plan.order.push_back(order[k]);
      res.plan.prices.push_back(chosen[k]);
    }
  }
  return res;
}

SppResult spp_optimal(const Instance& inst, const Subset& s, std::size_t cap) {
  if (s.size() > cap) {
    throw CapExceeded("spp_optimal: set larger than enumeration cap");
  }
  std::vector<int> order = s;
  std::sort(order.begin(), order.end());
  SppResult best;
  best.revenue = -1.0;
  do {
    SppResult cur = spp_optimal_fixed_order(inst, order);
    if (cur.revenue > best.revenue) best = std::move(cur);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

namespace {

struct CurvePoint {
  double x = 0.0;  // quantile: Pr[v >= atom]
  double y = 0.0;  // revenue:  atom * quantile
};

// slope(a->b) <= slope(b->c), i.e. b does not bend the chain downward.
bool not_concave_at(const CurvePoint& a, const CurvePoint& b,
                    const CurvePoint& c) {
  return (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) >= 0.0;
}

}  // namespace

ValueDistribution virtual_transform(const ValueDistribution& d) {
  const std::size_t n = d.size();
  // Points of the revenue curve in quantile space, by descending value so the
  // quantile axis ascends; point 0 is the origin.
  std::vector<CurvePoint> pts(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = n - 1 - j;  // support index, descending value
    pts[j + 1].x = 1.0 - d.cdf_below(d.support()[k]);
    pts[j + 1].y = d.support()[k] * pts[j + 1].x;
  }
  // Upper concave envelope (slopes strictly decreasing; collinear merges).
  std::vector<std::size_t> hull{0};
  for (std::size_t j = 1; j <= n; ++j) {
    while (hull.size() >= 2 &&
           not_concave_at(pts[hull[hull.size() - 2]], pts[hull.back()], pts[j])) {
      hull.pop_back();
    }
    hull.push_back(j);
  }
  // Each envelope segment assigns one ironed value to every atom whose
  // quantile interval it covers; computing the slope once per segment makes
  // equal ironed values bit-identical, so they merge below.
  std::vector<std::pair<double, double>> atoms;  // (ironed value, mass)
  atoms.reserve(n);
  for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
    const CurvePoint& a = pts[hull[seg]];
    const CurvePoint& b = pts[hull[seg + 1]];
    double slope = (b.y - a.y) / (b.x - a.x);
    if (!(slope > 0.0)) slope = 0.0;  // clamp; normalizes -0 as well
    for (std::size_t j = hull[seg] + 1; j <= hull[seg + 1]; ++j) {
      const std::size_t k = n - j;  // back to ascending support index
      atoms.emplace_back(slope, d.mass()[k]);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> support, mass;
  for (const auto& [v, m] : atoms) {
    if (!support.empty() && support.back() == v) {
      mass.back() += m;
    } else {
      support.push_back(v);
      mass.push_back(m);
    }
  }
  return ValueDistribution(std::move(support), std::move(mass));
}

std::vector<ValueDistribution> virtual_transform_all(const Instance& inst) {
  std::vector<ValueDistribution> out;
  out.reserve(static_cast<std::size_t>(inst.size()));
  for (const Bidder& b : inst.bidders()) out.push_back(virtual_transform(b.dist));
  return out;
}

bool is_regular(const ValueDistribution& d) {
  const std::size_t n = d.size();
  std::vector<CurvePoint> pts(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = n - 1 - j;
    pts[j + 1].x = 1.0 - d.cdf_below(d.support()[k]);
    pts[j + 1].y = d.support()[k] * pts[j + 1].x;
  }
  for (std::size_t j = 2; j <= n; ++j) {
    // Strict bend upward means the raw virtual value increases somewhere.
    if ((pts[j - 1].x - pts[j - 2].x) * (pts[j].y - pts[j - 1].y) -
            (pts[j - 1].y - pts[j - 2].y) * (pts[j].x - pts[j - 1].x) >
        0.0) {
      return false;
    }
  }
  return true;
}

double myerson_revenue_cached(const std::vector<ValueDistribution>& transformed,
                              const Subset& s) {
  if (s.empty()) return 0.0;
  DistView view;
  view.reserve(s.size());
  for (int i : s) view.push_back(&transformed[static_cast<std::size_t>(i)]);
  const OrderStats os = order_stats(view);
  // E[max of nonnegative values] by the tail integral over atom gaps.
  double rev = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < os.values.size(); ++k) {
    const double u = os.values[k];
    if (u > 0.0) rev += (u - prev) * os.p_max_ge[k];
    prev = u;
  }
  return rev;
}

double myerson_revenue(const Instance& inst, const Subset& s) {
  if (s.empty()) return 0.0;
  std::vector<ValueDistribution> transformed;
  transformed.reserve(static_cast<std::size_t>(inst.size()));
  // Only the selected bidders need transforming; keep index alignment.
  for (int i = 0; i < inst.size(); ++i) {
    bool used = std::find(s.begin(), s.end(), i) != s.end();
    transformed.push_back(used ? virtual_transform(inst.dist(i))
                               : ValueDistribution::point_mass(0.0));
  }
  return myerson_revenue_cached(transformed, s);
}

}  // namespace bidsel
