// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_IO_HPP
#define BIDSEL_IO_HPP

#include <string>

#include "bidsel/instance.hpp"

namespace bidsel {

// Parses the canonical instance schema:
//   {"bidders": [{"id": "...", "support": [[value, prob], ...],
//                 "cost": 0.25}, ...],
//    "capacity": 2}
// "cost" and "capacity" are optional; costs must be given for all bidders
// or for none. Throws std::invalid_argument on malformed input.
Instance instance_from_json_text(const std::string& text);

// Serializes to the same schema, two-space indented, with shortest
// round-tripping number formatting so write/read is lossless bit for bit.
std::string instance_to_json_text(const Instance& inst);

// Stable content hash of the canonical serialization: "fnv1a64:" followed
// by 16 lowercase hex digits.
std::string instance_digest(const Instance& inst);

}  // namespace bidsel

#endif  // BIDSEL_IO_HPP
