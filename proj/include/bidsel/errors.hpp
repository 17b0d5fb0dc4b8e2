// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_ERRORS_HPP
#define BIDSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bidsel {

// Thrown when an exhaustive routine is asked to exceed its documented size
// cap. Callers opt into larger caps explicitly instead of silently waiting.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bidsel

#endif  // BIDSEL_ERRORS_HPP
