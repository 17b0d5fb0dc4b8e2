// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidsel/auction.hpp"
#include "bidsel/rng.hpp"

namespace bidsel {

namespace {

// Geometric value ladder 2^((j-16)/4), j = 0..47: spans ~0.06 to ~215 with
// quarter-octave spacing, coarse enough that atoms collide across bidders.
constexpr int kValueLevels = 48;

double level_value(int j) {
  return std::pow(2.0, (static_cast<double>(j) - 16.0) / 4.0);
}

}  // namespace

Instance gen_random_instance(const RandomPoolParams& params,
                             std::uint64_t seed, std::uint64_t index) {
  if (params.n < 1 || params.support_min < 1 ||
      params.support_max < params.support_min ||
      params.support_max > kValueLevels) {
    throw std::invalid_argument("gen_random_instance: bad params");
  }
  Rng rng(seed, "gen.random", index);
  auto draw_dist = [&]() {
    const int span = params.support_max - params.support_min + 1;
    const int size =
        params.support_min + static_cast<int>(rng.below(
                                 static_cast<std::uint64_t>(span)));
    const bool zero_atom = rng.double01() < params.zero_value_prob;
    std::vector<int> levels;
    while (static_cast<int>(levels.size()) < size) {
      const int j = static_cast<int>(rng.below(kValueLevels));
      if (std::find(levels.begin(), levels.end(), j) == levels.end()) {
        levels.push_back(j);
      }
    }
    std::sort(levels.begin(), levels.end());
    std::vector<double> support(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      support[k] = level_value(levels[k]);
    }
    if (zero_atom) support[0] = 0.0;
    // Exponential weights with a floor keep every atom's mass bounded away
    // from zero; the last mass closes the sum to 1 exactly.
    std::vector<double> mass(support.size());
    double total = 0.0;
    for (double& m : mass) {
      m = 0.05 - std::log(1.0 - rng.double01());
      total += m;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < mass.size(); ++k) {
      mass[k] /= total;
      acc += mass[k];
    }
    mass.back() = 1.0 - acc;
    return ValueDistribution(std::move(support), std::move(mass));
  };
  std::vector<Bidder> bidders;
  bidders.reserve(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    ValueDistribution d = draw_dist();
    if (params.regular_only) {
      int tries = 0;
      while (!is_regular(d)) {
        if (++tries > 500) {
          throw std::runtime_error(
              "gen_random_instance: no regular draw after 500 tries");
        }
        d = draw_dist();
      }
    }
    std::optional<double> cost;
    if (params.with_costs) {
      cost = std::exp(rng.uniform(std::log(params.cost_lo),
                                  std::log(params.cost_hi)));
    }
    bidders.push_back(Bidder{"b" + std::to_string(i), std::move(d), cost});
  }
  return Instance(std::move(bidders), params.capacity);
}

Instance jitter_tie_free(const Instance& inst) {
  std::vector<Bidder> bidders;
  bidders.reserve(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const ValueDistribution& d = inst.dist(static_cast<int>(i));
    std::vector<double> support = d.support();
    for (double& v : support) {
      v += static_cast<double>(i) * 1e-7;
    }
    bidders.push_back(Bidder{inst.id(static_cast<int>(i)),
                             ValueDistribution(std::move(support), d.mass()),
                             inst.bidders()[i].cost});
  }
  return Instance(std::move(bidders), inst.capacity());
}

}  // namespace bidsel
