// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_DISTRIBUTION_HPP
#define BIDSEL_DISTRIBUTION_HPP

#include <cstddef>
#include <vector>

namespace bidsel {

// Absolute tolerance on revenue/profit comparisons everywhere in the library.
inline constexpr double kRevTol = 1e-9;
// Absolute tolerance for probability-mass bookkeeping.
inline constexpr double kMassTol = 1e-12;
// Default cap on the support size of a single value distribution.
inline constexpr std::size_t kMaxSupport = 64;

// A finite distribution over nonnegative item values.
//
// Invariants enforced at construction: support strictly increasing and
// nonnegative, masses strictly positive and summing to 1 within kMassTol,
// at most max_support atoms (callers building dense grids may raise the cap).
class ValueDistribution {
 public:
  ValueDistribution(std::vector<double> support, std::vector<double> mass,
                    std::size_t max_support = kMaxSupport);

  static ValueDistribution point_mass(double value);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }
  double min_value() const { return support_.front(); }
  double max_value() const { return support_.back(); }

  // Pr[v < t]; the left limit of the CDF at t.
  double cdf_below(double t) const;
  // Pr[v >= r]; a bidder offered price r accepts exactly when v >= r.
  double accept_prob(double r) const { return 1.0 - cdf_below(r); }

  bool operator==(const ValueDistribution& other) const {
    return support_ == other.support_ && mass_ == other.mass_;
  }

 private:
  std::vector<double> support_;
  std::vector<double> mass_;
  std::vector<double> below_;  // below_[k] = Pr[v < support_[k]]
};

}  // namespace bidsel

#endif  // BIDSEL_DISTRIBUTION_HPP
