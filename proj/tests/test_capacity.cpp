// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "bidsel/capacity.hpp"
#include "bidsel/errors.hpp"
#include "bidsel/gen.hpp"
#include "bidsel/instance.hpp"

using bidsel::Instance;
using bidsel::Objective;
using bidsel::Subset;
using bidsel::ValueDistribution;

namespace {

Instance deterministic_123(std::optional<int> capacity) {
  return Instance({{"1", ValueDistribution::point_mass(1.0), {}},
                   {"2", ValueDistribution::point_mass(2.0), {}},
                   {"3", ValueDistribution::point_mass(3.0), {}}},
                  capacity);
}

Instance coins(int n, std::optional<int> capacity) {
  std::vector<bidsel::Bidder> bs;
  const ValueDistribution coin({0.0, 1.0}, {0.5, 0.5});
  for (int i = 0; i < n; ++i) {
    bs.push_back({"c" + std::to_string(i), coin, {}});
  }
  return Instance(std::move(bs), capacity);
}

}  // namespace

TEST_CASE("reserve selection keeps the two strongest deterministic bidders") {
  const Instance inst = deterministic_123(2);
  const auto out = bidsel::select_ar_capacity(inst);
  CHECK(inst.ids_of(out.selected) == std::vector<std::string>{"2", "3"});
  CHECK(out.reserve == 3.0);
  CHECK(out.revenue == 3.0);
  CHECK(out.ar_best >= out.revenue);
}

TEST_CASE("price selection at a fixed price keeps likely acceptors") {
  const Instance inst = deterministic_123(1);
  // At price 2 both high bidders accept surely; the max-value tiebreak keeps
  // the one worth 3.
  const auto out = bidsel::select_ap_capacity(inst, 2.0);
  CHECK(out.selected == Subset{2});
  CHECK(out.revenue == 2.0);
}

TEST_CASE("price-and-set sweep matches exhaustive enumeration exactly") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 40; ++i) {
    params.n = 3 + i % 6;
    params.capacity = 1 + i % 3;
    const Instance inst = bidsel::gen_random_instance(params, 23, i);
    const auto alg = bidsel::select_ap_capacity_opt(inst);
    const auto brute = bidsel::brute_force_capacity(inst, Objective::kAp);
    CHECK(alg.revenue == brute.value);  // bitwise, by the canonical fold
  }
}

TEST_CASE("sequential-pricing DP on two coins keeps one offer") {
  const Instance inst = coins(2, 1);
  const auto out = bidsel::select_spp_capacity(inst);
  CHECK(out.revenue == 0.5);
  // Offer-vs-skip ties prefer skipping, so the earlier coin is skipped.
  CHECK(out.plan.order == std::vector<int>{1});
  CHECK(out.plan.prices == std::vector<double>{1.0});
  CHECK(out.selected == Subset{1});
}

TEST_CASE("sequential-pricing DP equals the fixed-order exhaustive optimum") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 30; ++i) {
    params.n = 2 + i % 5;
    params.capacity = 1 + i % std::min(3, params.n);
    const Instance inst = bidsel::gen_random_instance(params, 29, i);
    const auto alg = bidsel::select_spp_capacity(inst);
    const auto brute =
        bidsel::brute_force_capacity(inst, Objective::kSppFixedOrder);
    CHECK(alg.revenue == brute.value);  // same fold, bitwise
  }
}

TEST_CASE("greedy selection for the optimal auction is near-optimal") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 30; ++i) {
    params.n = 3 + i % 4;
    params.capacity = 1 + i % 3;
    const Instance inst = bidsel::gen_random_instance(params, 31, i);
    const auto alg = bidsel::select_myerson_greedy(inst);
    const auto brute = bidsel::brute_force_capacity(inst, Objective::kMyer);
    CHECK(alg.revenue * bidsel::kGreedyFactor >= brute.value - 1e-9);
    CHECK(alg.revenue <= brute.value + 1e-9);
    CHECK(alg.claimed_factor == bidsel::kGreedyFactor);
  }
}

TEST_CASE("reserve-auction selection is within its claimed factor") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 30; ++i) {
    params.n = 3 + i % 5;
    params.capacity = 1 + i % 3;
    const Instance inst = bidsel::gen_random_instance(params, 37, i);
    const auto alg = bidsel::select_ar_capacity(inst);
    const auto brute = bidsel::brute_force_capacity(inst, Objective::kAr);
    CHECK(alg.revenue * bidsel::kReservePricingRatio >= brute.value - 1e-9);
    CHECK(alg.ar_best >= alg.revenue - 1e-15);
  }
}

TEST_CASE("exhaustive search refuses oversized pools") {
  const Instance big = coins(17, 2);
  CHECK_THROWS_AS(bidsel::brute_force_capacity(big, Objective::kAp),
                  bidsel::CapExceeded);
  const Instance mid = coins(11, 2);
  CHECK_THROWS_AS(bidsel::brute_force_capacity(mid, Objective::kSpp),
                  bidsel::CapExceeded);
  CHECK_NOTHROW(bidsel::brute_force_capacity(mid, Objective::kAp));
}

TEST_CASE("uncapacitated pools may use everyone") {
  const Instance inst = coins(3, std::nullopt);
  const auto brute = bidsel::brute_force_capacity(inst, Objective::kAp);
  CHECK(brute.best == Subset{0, 1, 2});
  CHECK(brute.value == 0.875);  // price 1, sells unless all three decline
  const auto alg = bidsel::select_ap_capacity_opt(inst);
  CHECK(alg.revenue == 0.875);
}

TEST_CASE("subset order comparison is lexicographic") {
  CHECK(bidsel::subset_lex_less({0, 2}, {1}));
  CHECK(bidsel::subset_lex_less({0}, {0, 1}));
  CHECK_FALSE(bidsel::subset_lex_less({1, 2}, {1, 2}));
}
