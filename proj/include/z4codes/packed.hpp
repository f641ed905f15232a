#ifndef Z4CODES_PACKED_HPP
#define Z4CODES_PACKED_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include "codes.hpp"

namespace z4 {

/// Bit-sliced Z4 vector: symbol i is (hi_i lo_i) in binary, i.e. the value
/// 2*hi + lo, with coordinate i stored at bit i % 64 of word i / 64.
///
/// Under this layout the Gray image bits of symbol s are (lo ^ hi, hi), so
/// Lee weight is popcount(lo ^ hi) + popcount(hi).
template <std::size_t Words>
struct PackedZ4 {
  std::array<std::uint64_t, Words> lo{};
  std::array<std::uint64_t, Words> hi{};

  static PackedZ4 from(std::span<const std::uint8_t> v) {
    PackedZ4 p;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << (i % 64);
      if (v[i] & 1) p.lo[i / 64] |= bit;
      if (v[i] & 2) p.hi[i / 64] |= bit;
    }
    return p;
  }

  PackedZ4& operator+=(const PackedZ4& o) noexcept {
    for (std::size_t w = 0; w < Words; ++w) {
      const std::uint64_t carry = lo[w] & o.lo[w];
      lo[w] ^= o.lo[w];
      hi[w] ^= o.hi[w] ^ carry;
    }
    return *this;
  }

  template <Metric M>
  unsigned weight() const noexcept {
    unsigned w = 0;
    for (std::size_t i = 0; i < Words; ++i) {
      if constexpr (M == Metric::lee)
        w += std::popcount(lo[i] ^ hi[i]) + std::popcount(hi[i]);
      else if constexpr (M == Metric::hamming)
        w += std::popcount(lo[i] | hi[i]);
      else
        w += std::popcount(lo[i]) + 4 * std::popcount(hi[i] & ~lo[i]);
    }
    return w;
  }
};

} // namespace z4

#endif // Z4CODES_PACKED_HPP
