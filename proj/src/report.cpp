// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace bidsel {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  ordered_json root;
  root["command"] = report.command;
  root["instance"] = report.instance_digest;
  root["seed"] = report.seed;
  root["generator"] = report.generator;
  root["threads"] = report.threads;
  root["rows"] = ordered_json::array();
  for (const ReportRow& row : report.rows) {
    ordered_json jr;
    jr["algorithm"] = row.algorithm;
    jr["n"] = row.n;
    jr["m_or_deltastar"] = row.m_or_deltastar;
    jr["revenue"] = row.revenue;
    jr["cost"] = row.cost;
    jr["profit"] = row.profit;
    jr["claimed_factor"] = row.claimed_factor;
    if (row.oracle_value.has_value()) jr["oracle_value"] = *row.oracle_value;
    if (row.observed_factor.has_value()) {
      jr["observed_factor"] = *row.observed_factor;
    }
    jr["millis"] = row.millis;
    jr["selected"] = row.selected;
    ordered_json jm;
    jm["kind"] = row.mechanism.kind;
    if (row.mechanism.has_reserve) jm["reserve"] = row.mechanism.reserve;
    if (!row.mechanism.prices.empty()) {
      ordered_json prices = ordered_json::array();
      for (const auto& [id, price] : row.mechanism.prices) {
        ordered_json jp;
        jp["id"] = id;
        jp["price"] = price;
        prices.push_back(std::move(jp));
      }
      jm["prices"] = std::move(prices);
    }
    jr["mechanism"] = std::move(jm);
    root["rows"].push_back(std::move(jr));
  }
  return root.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
  std::string out =
      "instance_hash,algorithm,n,m_or_deltastar,revenue,cost,profit,"
      "claimed_factor,observed_factor,millis\n";
  for (const ReportRow& row : report.rows) {
    out += report.instance_digest;
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += row.m_or_deltastar;
    out += ',';
    out += num(row.revenue);
    out += ',';
    out += num(row.cost);
    out += ',';
    out += num(row.profit);
    out += ',';
    out += num(row.claimed_factor);
    out += ',';
    if (row.observed_factor.has_value()) out += num(*row.observed_factor);
    out += ',';
    out += num(row.millis);
    out += '\n';
  }
  return out;
}

}  // namespace bidsel
