// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_GEN_HPP
#define BIDSEL_GEN_HPP

#include <cstdint>
#include <optional>

#include "bidsel/instance.hpp"

namespace bidsel {

// Knobs for the random instance pool used by tests, verification suites,
// and the command line generator.
struct RandomPoolParams {
  int n = 4;
  int support_min = 2;
  int support_max = 5;
  bool with_costs = false;
  double cost_lo = 0.005;
  double cost_hi = 2.0;
  std::optional<int> capacity;
  double zero_value_prob = 0.125;
  // Redraw each bidder until its revenue curve needs no ironing.
  bool regular_only = false;
};

// Deterministic: the result depends only on (params, seed, index).
Instance gen_random_instance(const RandomPoolParams& params,
                             std::uint64_t seed, std::uint64_t index);

// Copy of inst with bidder i's support shifted by i * 1e-7 so that no two
// bidders share an atom and no atom collides across bidders.
Instance jitter_tie_free(const Instance& inst);

}  // namespace bidsel

#endif  // BIDSEL_GEN_HPP
