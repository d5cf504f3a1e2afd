#pragma once

#include <cstdint>

namespace crw {

/// Deterministic per-trial random stream. A stream is fully determined by
/// (master seed, stream index); distinct indices give independent-quality
/// streams, so parallel trials can draw without coordination.
///
/// The generator is xoshiro256**, seeded through splitmix64. Uniform draws
/// avoid std:: distributions so that sequences are identical across
/// standard-library implementations.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_(master_seed), stream_(stream_index) {
    std::uint64_t x = master_seed;
    x = splitmix(x);
    x ^= splitmix(stream_index + 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) {
      x = splitmix(x);
      word = x;
    }
    // xoshiro must not start from the all-zero state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
  }

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_index() const { return stream_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  int uniform_below(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t master_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t draws_ = 0;
  std::uint64_t state_[4] = {};
};

}  // namespace crw
