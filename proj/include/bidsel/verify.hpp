// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_VERIFY_HPP
#define BIDSEL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bidsel {

// One executed check. pass is recorded explicitly because some checks pass
// by finding something (a witness) rather than by staying under a bound.
struct CheckRow {
  std::string suite;
  std::string instance;
  std::string check;
  double observed = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;
  int failures = 0;
};

// Valid names for run_suite, in canonical order. "all" is handled by the
// caller by running each of these.
const std::vector<std::string>& suite_names();

// Runs `count` seeded checks of one suite. Deterministic for fixed
// (name, count, seed) regardless of thread count: work is split by instance
// index and rows are merged back in index order.
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed,
                      int threads);

// Header: suite,instance,check,observed,bound,slack,pass
std::string checks_to_csv(const std::vector<CheckRow>& rows);

// BIDDER_SELECT_THREADS when set to a positive integer, else 1.
int thread_count_from_env();

}  // namespace bidsel

#endif  // BIDSEL_VERIFY_HPP
