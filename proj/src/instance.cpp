// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace bidsel {

Instance::Instance(std::vector<Bidder> bidders, std::optional<int> capacity)
    : bidders_(std::move(bidders)), capacity_(capacity) {
  if (bidders_.empty()) {
    throw std::invalid_argument("instance: needs at least one bidder");
  }
  std::unordered_set<std::string> seen;
  std::size_t with_cost = 0;
  for (const Bidder& b : bidders_) {
    if (b.id.empty()) {
      throw std::invalid_argument("instance: bidder id must be nonempty");
    }
    if (!seen.insert(b.id).second) {
      throw std::invalid_argument("instance: duplicate bidder id '" + b.id + "'");
    }
    if (b.cost) {
      if (!std::isfinite(*b.cost) || *b.cost < 0.0) {
        throw std::invalid_argument("instance: costs must be finite and >= 0");
      }
      ++with_cost;
    }
  }
  if (with_cost != 0 && with_cost != bidders_.size()) {
    throw std::invalid_argument("instance: costs must be given for all bidders or none");
  }
  has_costs_ = with_cost == bidders_.size() && with_cost > 0;
  if (capacity_) {
    if (has_costs_) {
      throw std::invalid_argument("instance: capacity and costs are exclusive");
    }
    if (*capacity_ < 0 || *capacity_ > size()) {
      throw std::invalid_argument("instance: capacity out of range");
    }
  }
}

Subset Instance::all() const {
  Subset s(bidders_.size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

double Instance::total_cost(const Subset& s) const {
  double c = 0.0;
  for (int i : s) c += cost(i);
  return c;
}

std::vector<std::string> Instance::ids_of(const Subset& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (int i : s) out.push_back(id(i));
  return out;
}

std::vector<double> build_price_grid(const Instance& inst, const Subset& s) {
  std::vector<double> grid{0.0};
  for (int i : s) {
    const auto& sup = inst.dist(i).support();
    grid.insert(grid.end(), sup.begin(), sup.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> build_price_grid(const Instance& inst) {
  return build_price_grid(inst, inst.all());
}

}  // namespace bidsel
