#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace sobandit {

// Deterministic random stream. Thin wrapper over std::mt19937_64 that keeps
// every integer-to-real conversion explicit, so identical (seed, stream)
// pairs reproduce the same draws on every platform and build.
//
// Stream tags let one logical seed drive several independent consumers
// (environment draws, policy exploration, synthetic means, graph topology)
// without sharing state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) {
        return x % n;
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stream tags used across the library. Runs seeded with (seed, kEnvStream)
// and (seed, kPolicyStream) stay decoupled: a policy that consumes extra
// exploration randomness does not disturb the environment's reward draws.
inline constexpr std::uint64_t kEnvStream = 0;
inline constexpr std::uint64_t kPolicyStream = 1;
inline constexpr std::uint64_t kMeansStream = 2;
inline constexpr std::uint64_t kGraphStream = 3;

}  // namespace sobandit
