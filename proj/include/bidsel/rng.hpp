// Copyright 2026 the bidsel authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BIDSEL_RNG_HPP
#define BIDSEL_RNG_HPP

#include <cstdint>
#include <string_view>

namespace bidsel {

// Identifier recorded in reports so runs can be matched to the generator
// that produced them.
inline constexpr std::string_view kGeneratorName = "splitmix64-v1";

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic stream generator: the sequence depends only on
// (seed, stream_name, stream_index), never on call order across streams.
// Draws use explicit bit arithmetic rather than <random> distributions so
// results are identical across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream_name,
      std::uint64_t stream_index) {
    state_ = seed;
    (void)splitmix64_next(state_);
    state_ ^= fnv1a64(stream_name);
    (void)splitmix64_next(state_);
    state_ ^= stream_index * 0x9e3779b97f4a7c15ULL;
    (void)splitmix64_next(state_);
  }

  std::uint64_t u64() { return splitmix64_next(state_); }

  // Uniform in [0, 1) with 53 random bits.
  double double01() {
    return static_cast<double>(u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(u64()) * n) >> 64);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * double01(); }

 private:
  std::uint64_t state_;
};

}  // namespace bidsel

#endif  // BIDSEL_RNG_HPP
