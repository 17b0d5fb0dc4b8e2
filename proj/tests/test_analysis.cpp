// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bidsel/analysis.hpp"
#include "bidsel/auction.hpp"
#include "bidsel/gen.hpp"
#include "bidsel/instance.hpp"

using bidsel::Instance;
using bidsel::SubEvaluator;
using bidsel::Subset;
using bidsel::ValueDistribution;

TEST_CASE("fractional coverage coefficients on deterministic bidders") {
  const Instance inst =
      Instance({{"a", ValueDistribution::point_mass(1.0), {}},
                {"b", ValueDistribution::point_mass(2.0), {}}},
               {});
  const auto check = bidsel::check_xos(inst, {0, 1});
  CHECK(check.r_star == 2.0);
  REQUIRE(check.coeff.size() == 2);
  // Bidder b always wins at price 2; a is sheltered and contributes nothing.
  CHECK(check.coeff[0] == 0.0);
  CHECK(check.coeff[1] == 2.0);
  CHECK(check.identity_gap <= 1e-12);
  CHECK(check.min_domination_slack >= -1e-12);
}

TEST_CASE("coverage coefficients sum to revenue and are dominated") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 30; ++i) {
    params.n = 2 + i % 4;
    const Instance base = bidsel::gen_random_instance(params, 59, i);
    const Instance inst = bidsel::jitter_tie_free(base);
    const auto check = bidsel::check_xos(inst, inst.all());
    CHECK(check.identity_gap <= 1e-9);
    CHECK(check.min_domination_slack >= -1e-9);
  }
}

TEST_CASE("reserve revenue at a fixed reserve is not submodular") {
  const Instance inst = bidsel::ar_counterexample_instance();
  REQUIRE(inst.size() == 3);
  CHECK(inst.dist(0) == inst.dist(1));
  CHECK(inst.dist(1) == inst.dist(2));

  // Adding bidder 2 helps more at the larger set: the second 1.01 value
  // only matters once another bidder can push the price up to it.
  const double lone = bidsel::ar_revenue(inst, {0, 1}, 1.0) -
                      bidsel::ar_revenue(inst, {0}, 1.0);
  const double crowded = bidsel::ar_revenue(inst, {0, 1, 2}, 1.0) -
                         bidsel::ar_revenue(inst, {0, 2}, 1.0);
  CHECK(lone == doctest::Approx(1.0e-6).epsilon(1e-12));
  CHECK(crowded == doctest::Approx(1.98e-6).epsilon(1e-12));
  CHECK(crowded > lone + 9e-7);

  const auto viol = bidsel::check_submodularity(inst, inst.all(),
                                                SubEvaluator::kArFixedR, 1.0);
  CHECK(viol.size() >= 1);

  // The same pool is perfectly well-behaved under posted prices and under
  // the optimal auction.
  CHECK(bidsel::check_submodularity(inst, inst.all(), SubEvaluator::kApFixedR,
                                    1.0)
            .empty());
  CHECK(bidsel::check_submodularity(inst, inst.all(), SubEvaluator::kMyerson)
            .empty());
}

TEST_CASE("posted-price and optimal-auction revenues are submodular") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 25; ++i) {
    params.n = 2 + i % 4;
    const Instance inst = bidsel::gen_random_instance(params, 61, i);
    const auto grid = bidsel::build_price_grid(inst);
    const double r = grid[grid.size() / 2];
    CHECK(bidsel::check_submodularity(inst, inst.all(),
                                      SubEvaluator::kApFixedR, r)
              .empty());
    CHECK(bidsel::check_submodularity(inst, inst.all(), SubEvaluator::kMyerson)
              .empty());
  }
}

TEST_CASE("violation reports carry the offending sets") {
  const Instance inst = bidsel::ar_counterexample_instance();
  const auto viol = bidsel::check_submodularity(inst, inst.all(),
                                                SubEvaluator::kArFixedR, 1.0);
  REQUIRE_FALSE(viol.empty());
  for (const auto& v : viol) {
    CHECK(v.small.size() < v.large.size());
    CHECK(v.marginal_large > v.marginal_small + bidsel::kSubmodTol);
    // T must be a subset of U and j must lie outside U.
    for (int t : v.small) {
      CHECK(std::find(v.large.begin(), v.large.end(), t) != v.large.end());
    }
    CHECK(std::find(v.large.begin(), v.large.end(), v.added) == v.large.end());
  }
}

TEST_CASE("weight-sum encodings have the advertised shape") {
  const Instance inst = bidsel::subset_sum_instance({1.0, 2.5}, 3.5);
  REQUIRE(inst.size() == 2);
  CHECK(inst.has_costs());
  for (int i = 0; i < 2; ++i) {
    REQUIRE(inst.dist(i).size() == 2);
    CHECK(inst.dist(i).support()[0] == 0.0);
    CHECK(inst.dist(i).support()[1] == 1.0);
  }
  const double w0 = 1.0, w1 = 2.5, target = 3.5;
  CHECK(inst.dist(0).mass()[0] == doctest::Approx(std::exp(-w0)).epsilon(1e-15));
  CHECK(inst.dist(1).mass()[0] == doctest::Approx(std::exp(-w1)).epsilon(1e-15));
  CHECK(inst.cost(0) ==
        doctest::Approx(w0 * std::exp(-target)).epsilon(1e-15));
  CHECK(inst.cost(1) ==
        doctest::Approx(w1 * std::exp(-target)).epsilon(1e-15));

  CHECK_THROWS_AS(bidsel::subset_sum_instance({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bidsel::subset_sum_instance({-1.0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("the separation family is an i.i.d. unit-cost pool") {
  const Instance inst = bidsel::gap_instance(8, 64);
  REQUIRE(inst.size() == 8);
  CHECK(inst.has_costs());
  for (int i = 0; i < inst.size(); ++i) {
    CHECK(inst.cost(i) == 1.0);
    CHECK(inst.dist(i) == inst.dist(0));
  }
  CHECK(inst.dist(0).size() <= 64);
  CHECK(inst.dist(0).min_value() == 2.0);
  CHECK(inst.dist(0).max_value() == 32.0);
  // The lowest atom is reachable by every draw: values never fall below 2.
  CHECK(inst.dist(0).accept_prob(2.0) == 1.0);

  CHECK_THROWS_AS(bidsel::gap_instance(1), std::invalid_argument);
  CHECK_THROWS_AS(bidsel::gap_instance(4, 8), std::invalid_argument);
}

TEST_CASE("one invited bidder never profits much on the separation family") {
  const Instance inst = bidsel::gap_instance(8, 64);
  const double single = bidsel::best_singleton_apc(inst);
  CHECK(single == doctest::Approx(1.0).epsilon(1e-9));
  const double auction = bidsel::best_prefix_arc(inst);
  CHECK(auction > single);
}

TEST_CASE("the separation grows with the pool") {
  const double gap16 =
      bidsel::best_prefix_arc(bidsel::gap_instance(16, 64)) -
      bidsel::best_singleton_apc(bidsel::gap_instance(16, 64));
  const double gap32 =
      bidsel::best_prefix_arc(bidsel::gap_instance(32, 64)) -
      bidsel::best_singleton_apc(bidsel::gap_instance(32, 64));
  CHECK(gap16 > 1.0);
  CHECK(gap32 > gap16);
}
