// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#include "bidsel/io.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bidsel/rng.hpp"

namespace bidsel {

namespace {

using ordered_json = nlohmann::ordered_json;

// Reading tolerates dense supports (e.g. fine price grids) well past the
// default construction cap.
constexpr std::size_t kParseSupportCap = 4096;

double require_number(const ordered_json& j, const char* what) {
  if (!j.is_number()) {
    throw std::invalid_argument(std::string("instance json: ") + what +
                                " must be a number");
  }
  return j.get<double>();
}

}  // namespace

Instance instance_from_json_text(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("instance json: parse error: ") +
                                e.what());
  }
  if (!root.is_object() || !root.contains("bidders") ||
      !root["bidders"].is_array()) {
    throw std::invalid_argument(
        "instance json: top level must be an object with a \"bidders\" array");
  }
  std::vector<Bidder> bidders;
  for (const ordered_json& jb : root["bidders"]) {
    if (!jb.is_object() || !jb.contains("id") || !jb["id"].is_string() ||
        !jb.contains("support") || !jb["support"].is_array()) {
      throw std::invalid_argument(
          "instance json: each bidder needs an \"id\" string and a "
          "\"support\" array");
    }
    std::vector<double> support, mass;
    for (const ordered_json& atom : jb["support"]) {
      if (!atom.is_array() || atom.size() != 2) {
        throw std::invalid_argument(
            "instance json: support atoms must be [value, prob] pairs");
      }
      support.push_back(require_number(atom[0], "support value"));
      mass.push_back(require_number(atom[1], "support prob"));
    }
    std::optional<double> cost;
    if (jb.contains("cost")) {
      cost = require_number(jb["cost"], "cost");
    }
    bidders.push_back(Bidder{jb["id"].get<std::string>(),
                             ValueDistribution(std::move(support),
                                               std::move(mass),
                                               kParseSupportCap),
                             cost});
  }
  std::optional<int> capacity;
  if (root.contains("capacity")) {
    if (!root["capacity"].is_number_integer()) {
      throw std::invalid_argument("instance json: capacity must be an integer");
    }
    capacity = root["capacity"].get<int>();
  }
  return Instance(std::move(bidders), capacity);
}

std::string instance_to_json_text(const Instance& inst) {
  ordered_json root;
  root["bidders"] = ordered_json::array();
  for (const Bidder& b : inst.bidders()) {
    ordered_json jb;
    jb["id"] = b.id;
    ordered_json atoms = ordered_json::array();
    for (std::size_t k = 0; k < b.dist.size(); ++k) {
      atoms.push_back(ordered_json::array({b.dist.support()[k],
                                           b.dist.mass()[k]}));
    }
    jb["support"] = std::move(atoms);
    if (b.cost.has_value()) {
      jb["cost"] = *b.cost;
    }
    root["bidders"].push_back(std::move(jb));
  }
  if (inst.capacity().has_value()) {
    root["capacity"] = *inst.capacity();
  }
  return root.dump(2) + "\n";
}

std::string instance_digest(const Instance& inst) {
  const std::uint64_t h = fnv1a64(instance_to_json_text(inst));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bidsel
