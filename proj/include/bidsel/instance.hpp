// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_INSTANCE_HPP
#define BIDSEL_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bidsel/distribution.hpp"

namespace bidsel {

struct Bidder {
  std::string id;
  ValueDistribution dist;
  std::optional<double> cost;  // present exactly on cost instances
};

// A subset of bidders, as ascending indices into Instance::bidders().
using Subset = std::vector<int>;

// One selection problem: a pool of independent bidders plus either a
// cardinality budget (capacity) or per-bidder participation costs.
//
// Invariants: ids unique and nonempty; costs are all-present or all-absent,
// finite and >= 0; capacity, when present, is in [0, n] and excludes costs.
class Instance {
 public:
  Instance(std::vector<Bidder> bidders, std::optional<int> capacity);

  const std::vector<Bidder>& bidders() const { return bidders_; }
  int size() const { return static_cast<int>(bidders_.size()); }
  std::optional<int> capacity() const { return capacity_; }
  bool has_costs() const { return has_costs_; }

  const ValueDistribution& dist(int i) const { return bidders_[static_cast<std::size_t>(i)].dist; }
  const std::string& id(int i) const { return bidders_[static_cast<std::size_t>(i)].id; }
  double cost(int i) const { return bidders_[static_cast<std::size_t>(i)].cost.value_or(0.0); }

  Subset all() const;
  double total_cost(const Subset& s) const;
  std::vector<std::string> ids_of(const Subset& s) const;

 private:
  std::vector<Bidder> bidders_;
  std::optional<int> capacity_;
  bool has_costs_ = false;
};

// Sorted, deduplicated union of all support points plus 0. Posted-price and
// reserve optimizers only ever need to sweep this grid: between two adjacent
// atoms no acceptance probability changes, so revenue rises linearly toward
// the upper atom.
std::vector<double> build_price_grid(const Instance& inst);
std::vector<double> build_price_grid(const Instance& inst, const Subset& s);

}  // namespace bidsel

#endif  // BIDSEL_INSTANCE_HPP
