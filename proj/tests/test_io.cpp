// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidsel/analysis.hpp"
#include "bidsel/gen.hpp"
#include "bidsel/instance.hpp"
#include "bidsel/io.hpp"
#include "bidsel/report.hpp"
#include "bidsel/rng.hpp"

using bidsel::Instance;

namespace {

void expect_same(const Instance& a, const Instance& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.capacity() == b.capacity());
  CHECK(a.has_costs() == b.has_costs());
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.id(i) == b.id(i));
    CHECK(a.dist(i) == b.dist(i));
    CHECK(a.cost(i) == b.cost(i));
  }
}

}  // namespace

TEST_CASE("instances survive a print/parse round trip unchanged") {
  bidsel::RandomPoolParams params;
  for (int i = 0; i < 30; ++i) {
    params.n = 1 + i % 6;
    params.with_costs = (i % 3 == 0);
    params.capacity.reset();
    if (i % 3 == 1) params.capacity = 1 + i % 2;
    const Instance inst = bidsel::gen_random_instance(params, 67, i);
    const std::string text = bidsel::instance_to_json_text(inst);
    expect_same(inst, bidsel::instance_from_json_text(text));
  }
}

TEST_CASE("structured instances also round trip") {
  const Instance sum = bidsel::subset_sum_instance({1.0, 2.0, 0.5}, 2.5);
  expect_same(sum,
              bidsel::instance_from_json_text(bidsel::instance_to_json_text(sum)));

  // Dense support: more atoms than the default construction cap.
  const Instance gap = bidsel::gap_instance(16, 256);
  REQUIRE(gap.dist(0).size() > 64);
  expect_same(gap,
              bidsel::instance_from_json_text(bidsel::instance_to_json_text(gap)));
}

TEST_CASE("digests are stable, well-formed, and discriminating") {
  const Instance a = bidsel::subset_sum_instance({1.0, 2.0}, 3.0);
  const Instance b = bidsel::subset_sum_instance({1.0, 2.0}, 2.9);
  const std::string da = bidsel::instance_digest(a);
  REQUIRE(da.size() == 8 + 16);
  CHECK(da.substr(0, 8) == "fnv1a64:");
  for (std::size_t k = 8; k < da.size(); ++k) {
    CHECK(std::isxdigit(static_cast<unsigned char>(da[k])));
  }
  CHECK(da == bidsel::instance_digest(a));
  CHECK(da != bidsel::instance_digest(b));
}

TEST_CASE("malformed instance text is rejected with a clear error") {
  using bidsel::instance_from_json_text;
  CHECK_THROWS_AS(instance_from_json_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json_text("{}"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json_text(R"({"bidders": []})"),
                  std::invalid_argument);
  // Atoms must be [value, probability] pairs.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0]]}]})"),
      std::invalid_argument);
  // Masses must sum to one.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0, 0.5]]}]})"),
      std::invalid_argument);
  // Capacity must be an integer.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0, 1.0]]}],
              "capacity": 1.5})"),
      std::invalid_argument);
  // Costs are all-or-nothing across bidders.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0, 1.0]], "cost": 0.1},
                          {"id": "b", "support": [[1.0, 1.0]]}]})"),
      std::invalid_argument);
  // Capacity and costs are mutually exclusive problem models.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0, 1.0]], "cost": 0.1}],
              "capacity": 1})"),
      std::invalid_argument);
  // Duplicate ids are rejected.
  CHECK_THROWS_AS(
      instance_from_json_text(
          R"({"bidders": [{"id": "a", "support": [[1.0, 1.0]]},
                          {"id": "a", "support": [[2.0, 1.0]]}]})"),
      std::invalid_argument);
}

TEST_CASE("reports serialize to the documented CSV shape") {
  bidsel::RunReport rep;
  rep.command = "select --model capacity";
  rep.instance_digest = "fnv1a64:0123456789abcdef";
  rep.seed = 7;
  rep.threads = 1;

  bidsel::ReportRow row;
  row.algorithm = "cap-ap";
  row.n = 3;
  row.m_or_deltastar = "2";
  row.revenue = 1.5;
  row.cost = 0.0;
  row.profit = 1.5;
  row.claimed_factor = 1.0;
  row.oracle_value = 1.5;
  row.observed_factor = 1.0;
  row.millis = 0.125;
  row.selected = {"a", "b"};
  rep.rows.push_back(row);

  bidsel::ReportRow bare;
  bare.algorithm = "cap-spp";
  bare.n = 3;
  bare.revenue = 0.5;
  bare.profit = 0.5;
  bare.millis = 0.25;
  rep.rows.push_back(bare);

  const std::string csv = bidsel::report_to_csv(rep);
  const std::string expected =
      "instance_hash,algorithm,n,m_or_deltastar,revenue,cost,profit,"
      "claimed_factor,observed_factor,millis\n"
      "fnv1a64:0123456789abcdef,cap-ap,3,2,1.5,0,1.5,1,1,0.125\n"
      "fnv1a64:0123456789abcdef,cap-spp,3,-,0.5,0,0.5,1,,0.25\n";
  CHECK(csv == expected);
}

TEST_CASE("reports serialize to JSON with the documented keys") {
  bidsel::RunReport rep;
  rep.command = "eval";
  rep.instance_digest = "fnv1a64:ffffffffffffffff";
  rep.seed = 1;
  rep.generator = bidsel::kGeneratorName;
  rep.threads = 2;
  bidsel::ReportRow row;
  row.algorithm = "eval-ar";
  row.n = 2;
  row.revenue = 1.0;
  row.profit = 1.0;
  row.mechanism.kind = "ar";
  row.mechanism.has_reserve = true;
  row.mechanism.reserve = 0.5;
  row.selected = {"a"};
  rep.rows.push_back(row);

  const std::string text = bidsel::report_to_json(rep);
  for (const char* key :
       {"\"command\"", "\"instance\"", "\"seed\"", "\"generator\"",
        "\"threads\"", "\"rows\"", "\"algorithm\"", "\"revenue\"",
        "\"mechanism\"", "\"reserve\"", "\"selected\""}) {
    INFO(key);
    CHECK(text.find(key) != std::string::npos);
  }
  CHECK(text.find("splitmix64-v1") != std::string::npos);
  CHECK(text.find("\"eval-ar\"") != std::string::npos);
}
