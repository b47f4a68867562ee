// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace eipe {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so parallel consumers can index into the stream without sharing
// state and results are independent of scheduling.  The mixer is the
// splitmix64 finalizer, which passes BigCrush as a counter hash.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xd1b54a32d192ed03ull))) {}

    std::uint64_t bits(std::uint64_t counter) const { return mix(key_ ^ mix(counter + 0x2545f4914f6cdd1dull)); }

    // Uniform in [0, 1); 53 random bits, never returns 1.
    double u01(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * u01(counter);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

// Stream ids keep independent consumers of the same user seed decorrelated.
inline constexpr std::uint64_t kStreamMcEncoding = 1;
inline constexpr std::uint64_t kStreamMcMoments = 2;
inline constexpr std::uint64_t kStreamStratified = 3;
inline constexpr std::uint64_t kStreamCorpus = 4;
inline constexpr std::uint64_t kStreamDegenerateCorpus = 5;

}  // namespace eipe
