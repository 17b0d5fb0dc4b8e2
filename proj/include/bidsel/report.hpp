// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_REPORT_HPP
#define BIDSEL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bidsel {

// What to post: an order of bidders with personal prices, or a reserve.
struct MechanismDesc {
  std::string kind;  // "ap", "ar", "spa", "spp", "myer"
  bool has_reserve = false;
  double reserve = 0.0;
  std::vector<std::pair<std::string, double>> prices;  // (bidder id, price)
};

struct ReportRow {
  std::string algorithm;
  int n = 0;
  // Capacity for cardinality-constrained runs, delta for surplus-style
  // diagnostics, "-" when neither applies.
  std::string m_or_deltastar = "-";
  double revenue = 0.0;
  double cost = 0.0;
  double profit = 0.0;
  double claimed_factor = 1.0;
  std::optional<double> oracle_value;
  std::optional<double> observed_factor;
  double millis = 0.0;
  std::vector<std::string> selected;
  MechanismDesc mechanism;
};

struct RunReport {
  std::string command;
  std::string instance_digest;
  std::uint64_t seed = 0;
  std::string generator;
  int threads = 1;
  std::vector<ReportRow> rows;
};

std::string report_to_json(const RunReport& report);

// Header: instance_hash,algorithm,n,m_or_deltastar,revenue,cost,profit,
// claimed_factor,observed_factor,millis. observed_factor is blank when no
// oracle value was computed.
std::string report_to_csv(const RunReport& report);

}  // namespace bidsel

#endif  // BIDSEL_REPORT_HPP
