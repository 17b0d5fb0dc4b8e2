// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bidsel {

ValueDistribution::ValueDistribution(std::vector<double> support,
                                     std::vector<double> mass,
                                     std::size_t max_support)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (support_.empty()) {
    throw std::invalid_argument("distribution: empty support");
  }
  if (support_.size() != mass_.size()) {
    throw std::invalid_argument("distribution: support/mass size mismatch");
  }
  if (support_.size() > max_support) {
    throw std::invalid_argument("distribution: support larger than cap");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (!std::isfinite(support_[k]) || support_[k] < 0.0) {
      throw std::invalid_argument("distribution: values must be finite and >= 0");
    }
    if (k > 0 && !(support_[k - 1] < support_[k])) {
      throw std::invalid_argument("distribution: support must be strictly increasing");
    }
    if (!std::isfinite(mass_[k]) || mass_[k] <= 0.0) {
      throw std::invalid_argument("distribution: masses must be positive");
    }
    sum += mass_[k];
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    throw std::invalid_argument("distribution: masses must sum to 1");
  }
  below_.resize(support_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    below_[k] = acc;
    acc += mass_[k];
  }
}

ValueDistribution ValueDistribution::point_mass(double value) {
  return ValueDistribution({value}, {1.0});
}

double ValueDistribution::cdf_below(double t) const {
  // First atom >= t; everything before it lies strictly below t.
  auto it = std::lower_bound(support_.begin(), support_.end(), t);
  if (it == support_.end()) return 1.0;
  return below_[static_cast<std::size_t>(it - support_.begin())];
}

}  // namespace bidsel
