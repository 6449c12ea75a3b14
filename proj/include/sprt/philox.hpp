#pragma once

// Philox4x64-10 counter-based RNG. Streams are pure functions of
// (key, counter), so per-path substreams can be replayed in any order and on
// any number of workers with bit-identical results.

#include <array>
#include <cstdint>

namespace sprt {

struct PhiloxBlock {
  std::array<std::uint64_t, 4> words;
};

namespace detail {

inline constexpr std::uint64_t philox_m0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t philox_m1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t philox_w0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t philox_w1 = 0xBB67AE8584CAA73Bull;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  lo = static_cast<std::uint64_t>(p);
  hi = static_cast<std::uint64_t>(p >> 64);
}

}  // namespace detail

/// One Philox4x64-10 block for the given 256-bit counter and 128-bit key.
inline PhiloxBlock philox4x64(std::array<std::uint64_t, 4> ctr,
                              std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    detail::mul_hi_lo(detail::philox_m0, ctr[0], hi0, lo0);
    detail::mul_hi_lo(detail::philox_m1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += detail::philox_w0;
    key[1] += detail::philox_w1;
  }
  return PhiloxBlock{ctr};
}

/// A forward-only uniform stream identified by (seed, stream id, substream).
/// Substreams with distinct ids never collide: the id and substream occupy
/// dedicated counter words and only the block counter advances.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t substream = 0)
      : key_{seed, 0xDA3E39CB94B95BDBull},
        base_{0, substream, stream, 0} {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      auto ctr = base_;
      ctr[0] = block_++;
      buf_ = philox4x64(ctr, key_).words;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  /// Uniform deviate in the open interval (0, 1) with 2^-53 resolution.
  double next_u01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> base_;
  std::array<std::uint64_t, 4> buf_{};
  std::uint64_t block_ = 0;
  unsigned pos_ = 4;
};

}  // namespace sprt
