#pragma once

#include <array>
#include <cstdint>

namespace classmatch {

/// Identifies one reproducible random stream. Identical (seed, stream_id)
/// pairs reproduce identical draws bit-for-bit, and distinct stream_ids give
/// statistically independent streams, so parallel trials can each own one.
struct Seed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {

// Philox4x32-10 round function (counter-based generator).
inline void philoxRound(std::array<std::uint32_t, 4>& ctr,
                        std::array<std::uint32_t, 2>& key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  key[0] += 0x9E3779B9u;  // golden ratio
  key[1] += 0xBB67AE85u;  // sqrt(3)-1
}

inline std::array<std::uint32_t, 4> philox(std::uint64_t key64,
                                           std::uint64_t ctr_hi,
                                           std::uint64_t ctr_lo) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
      static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key64),
                                      static_cast<std::uint32_t>(key64 >> 32)};
  for (int i = 0; i < 10; ++i) philoxRound(ctr, key);
  return ctr;
}

}  // namespace detail

/// Counter-based stream: stateless function of (seed, stream_id, counter).
/// Jumping ahead is just setting the counter, so disjoint substreams are free.
class Rng {
 public:
  explicit Rng(Seed s) : seed_(s.seed), stream_(s.stream_id) {}
  Rng(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

  std::uint64_t nextU64() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    auto out = detail::philox(seed_, stream_, ctr_++);
    spare_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    have_ = true;
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double nextDouble() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double nextDoubleOpen() { return 1.0 - nextDouble(); }

  void skipTo(std::uint64_t counter) {
    ctr_ = counter;
    have_ = false;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t ctr_ = 0;
  std::uint64_t spare_ = 0;
  bool have_ = false;
};

}  // namespace classmatch
