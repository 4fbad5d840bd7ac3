#pragma once

#include <cstdint>

namespace waf {

// SplitMix64 finalizer. Bijective on 64-bit words, good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives a stream id from a purpose tag plus up to two indices, so that
// e.g. (replicate r, permutation b) pairs map to well-separated streams.
constexpr std::uint64_t substream_id(std::uint64_t purpose, std::uint64_t a = 0,
                                     std::uint64_t b = 0) {
  return mix64(purpose + 0x9E3779B97F4A7C15ULL * a) ^
         mix64(b + 0xD1B54A32D192ED03ULL);
}

// Counter-based generator in the SplitMix64 family: the i-th output is
// mix64(origin + i * gamma), where the origin is keyed by (seed, stream_id).
// The same (seed, stream_id) therefore reproduces the same sequence no
// matter which thread draws it, and distinct stream ids land at unrelated
// points of the underlying 2^64 cycle.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : state_(mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) +
                     (stream_id ^ 0xBB67AE8584CAA73BULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform strictly inside (0, 1); safe to feed through quantile functions.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) by Lemire's multiply-shift rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stream purpose tags. Keeping them in one place avoids accidental reuse
// of the same (purpose, index) pair by two different samplers.
namespace stream_purpose {
constexpr std::uint64_t kMaf = 0x01;
constexpr std::uint64_t kGenotype = 0x02;
constexpr std::uint64_t kEffects = 0x03;
constexpr std::uint64_t kTrait = 0x04;
constexpr std::uint64_t kCovariate = 0x05;
constexpr std::uint64_t kPermutation = 0x06;
constexpr std::uint64_t kReplicatePlan = 0x07;
}  // namespace stream_purpose

}  // namespace waf
