#ifndef Z4CODES_GRAY_HPP
#define Z4CODES_GRAY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codes.hpp"
#include "error.hpp"

namespace z4 {

using BitVector = std::vector<std::uint8_t>;

enum class Linearity {
  linear,
  nonlinear,
  /// closure held on a random sample of pairs; not proven
  sampled,
};

inline std::string_view to_string(Linearity l) {
  switch (l) {
    case Linearity::linear: return "linear";
    case Linearity::nonlinear: return "nonlinear";
    case Linearity::sampled: return "sampled";
  }
  return "?";
}

struct LinearityCheck {
  /// Sets up to this size get an exact check.
  std::size_t exact_bound = std::size_t{1} << 16;
  std::size_t samples = 100'000;
  std::uint64_t seed = 0x5eed;
};

/// A set of binary words (sorted, no duplicates).
struct BinaryCodeSet {
  std::size_t length = 0;
  std::vector<BitVector> words;
  Linearity linear = Linearity::nonlinear;
};

/// A set of Z4 words (sorted, no duplicates), in general nonlinear.
struct QuaternaryCodeSet {
  std::size_t length = 0;
  std::vector<Z4Vector> words;
  Linearity linear = Linearity::nonlinear;
};

// 0 -> 00, 1 -> 10, 2 -> 11, 3 -> 01; symbol i occupies bits 2i and 2i+1.
inline BitVector gray_map(std::span<const std::uint8_t> v) {
  static constexpr std::uint8_t first[4] = {0, 1, 1, 0};
  static constexpr std::uint8_t second[4] = {0, 0, 1, 1};
  BitVector out(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[2 * i] = first[v[i] & 3];
    out[2 * i + 1] = second[v[i] & 3];
  }
  return out;
}

inline Z4Vector inverse_gray_map(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2) throw DomainError("inverse Gray map needs an even number of bits");
  static constexpr std::uint8_t table[2][2] = {{0, 3}, {1, 2}};
  Z4Vector v(bits.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = table[bits[2 * i] & 1][bits[2 * i + 1] & 1];
  return v;
}

inline std::string format_bits(std::span<const std::uint8_t> b) {
  std::string s;
  for (auto x : b) s += x ? '1' : '0';
  return s;
}

inline BitVector parse_bits(std::string_view s) {
  BitVector b;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw ParseError("invalid bit '" + std::string(1, ch) + "' in '" + std::string(s) + "'");
    b.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return b;
}

inline unsigned hamming_distance_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw DomainError("bit vector length mismatch");
  unsigned d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] ^ b[i]) & 1;
  return d;
}

namespace detail {

/// Rank of a set of binary words over Z2.
inline std::size_t binary_rank(const std::vector<BitVector>& words, std::size_t length) {
  const std::size_t nw = (length + 63) / 64;
  std::vector<std::vector<std::uint64_t>> basis;  // each with a distinct leading bit
  std::vector<std::size_t> lead;
  for (const auto& w : words) {
    std::vector<std::uint64_t> v(nw, 0);
    for (std::size_t i = 0; i < length; ++i)
      if (w[i]) v[i / 64] |= std::uint64_t{1} << (i % 64);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if ((v[lead[b] / 64] >> (lead[b] % 64)) & 1)
        for (std::size_t j = 0; j < nw; ++j) v[j] ^= basis[b][j];
    for (std::size_t i = 0; i < length; ++i) {
      if ((v[i / 64] >> (i % 64)) & 1) {
        // keep basis fully reduced at its lead positions
        for (std::size_t b = 0; b < basis.size(); ++b)
          if ((basis[b][i / 64] >> (i % 64)) & 1)
            for (std::size_t j = 0; j < nw; ++j) basis[b][j] ^= v[j];
        basis.push_back(std::move(v));
        lead.push_back(i);
        break;
      }
    }
    if (basis.size() == length) break;
  }
  return basis.size();
}

/// log2 of the size of the Z4-span of a set of words (2 k1 + k2).
inline std::size_t z4_span_log2(const std::vector<Z4Vector>& words, std::size_t length) {
  Z4Matrix acc;
  for (std::size_t i = 0; i < words.size();) {
    const std::size_t end = std::min(words.size(), i + 256);
    acc.insert(acc.end(), words.begin() + static_cast<std::ptrdiff_t>(i), words.begin() + static_cast<std::ptrdiff_t>(end));
    Z4LinearCode code(length, std::move(acc));
    acc = code.basis();
    i = end;
  }
  return Z4LinearCode(length, acc).log2_size();
}

template <typename Word, typename Add>
Linearity sampled_closure(const std::vector<Word>& words, const LinearityCheck& cfg, Add&& add) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    auto sum = add(words[pick(rng)], words[pick(rng)]);
    if (!std::binary_search(words.begin(), words.end(), sum)) return Linearity::nonlinear;
  }
  return Linearity::sampled;
}

} // namespace detail

/// A set S containing 0 is linear iff |S| equals the size of its span.
inline Linearity check_linearity(const BinaryCodeSet& b, const LinearityCheck& cfg = {}) {
  if (b.words.empty()) return Linearity::nonlinear;
  const BitVector zero(b.length, 0);
  if (!std::binary_search(b.words.begin(), b.words.end(), zero)) return Linearity::nonlinear;
  if (b.words.size() <= cfg.exact_bound) {
    const std::size_t rank = detail::binary_rank(b.words, b.length);
    if (rank >= 63) return Linearity::nonlinear;
    return (std::uint64_t{1} << rank) == b.words.size() ? Linearity::linear : Linearity::nonlinear;
  }
  return detail::sampled_closure(b.words, cfg, [](const BitVector& x, const BitVector& y) {
    BitVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ^ y[i];
    return s;
  });
}

inline Linearity check_linearity(const QuaternaryCodeSet& q, const LinearityCheck& cfg = {}) {
  if (q.words.empty()) return Linearity::nonlinear;
  const Z4Vector zero(q.length, 0);
  if (!std::binary_search(q.words.begin(), q.words.end(), zero)) return Linearity::nonlinear;
  if (q.words.size() <= cfg.exact_bound) {
    const std::size_t lg = detail::z4_span_log2(q.words, q.length);
    if (lg >= 63) return Linearity::nonlinear;
    return (std::uint64_t{1} << lg) == q.words.size() ? Linearity::linear : Linearity::nonlinear;
  }
  return detail::sampled_closure(q.words, cfg, [](const Z4Vector& x, const Z4Vector& y) {
    Z4Vector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = static_cast<std::uint8_t>((x[i] + y[i]) & 3);
    return s;
  });
}

/// All codewords of a linear code (|C| must be modest).
inline std::vector<Z4Vector> codewords(const Z4LinearCode& code, std::size_t max_words = std::size_t{1} << 24) {
  if (code.log2_size() > 62 || (std::uint64_t{1} << code.log2_size()) > max_words)
    throw DomainError("code too large to list its codewords");
  const auto basis = code.basis();
  std::vector<unsigned> radix(code.k1(), 4);
  radix.resize(basis.size(), 2);
  std::vector<Z4Vector> out;
  out.reserve(std::size_t{1} << code.log2_size());
  Z4Vector cw(code.length(), 0);
  std::vector<unsigned> counter(basis.size(), 0);
  out.push_back(cw);
  for (;;) {
    std::size_t j = 0;
    while (j < basis.size() && ++counter[j] == radix[j]) counter[j++] = 0;
    if (j == basis.size()) break;
    for (std::size_t i = 0; i < cw.size(); ++i) cw[i] = static_cast<std::uint8_t>((cw[i] + basis[j][i]) & 3);
    out.push_back(cw);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Exact linearity of the Gray image without listing codewords: phi(C) is
/// linear iff 2 (u * v) lies in C for all u, v in C (* componentwise). The
/// map (u, v) -> 2 (u * v) is Z2-bilinear in u mod 2, v mod 2, so pairs of
/// basis rows suffice.
inline bool gray_image_is_linear(const Z4LinearCode& code) {
  const auto basis = code.basis();
  const std::size_t size = code.log2_size();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Z4Vector w(code.length());
      for (std::size_t c = 0; c < w.size(); ++c) w[c] = static_cast<std::uint8_t>((2 * basis[i][c] * basis[j][c]) & 3);
      auto rows = basis;
      rows.push_back(std::move(w));
      if (Z4LinearCode(code.length(), std::move(rows)).log2_size() != size) return false;
    }
  return true;
}

inline BinaryCodeSet gray_image(const Z4LinearCode& code, const LinearityCheck& cfg = {}) {
  BinaryCodeSet b;
  b.length = 2 * code.length();
  for (const auto& w : codewords(code)) b.words.push_back(gray_map(w));
  std::sort(b.words.begin(), b.words.end());
  b.linear = check_linearity(b, cfg);
  return b;
}

inline BinaryCodeSet make_binary_set(std::size_t length, std::vector<BitVector> words, const LinearityCheck& cfg = {}) {
  for (const auto& w : words)
    if (w.size() != length) throw DomainError("binary word length mismatch");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  BinaryCodeSet b{length, std::move(words), Linearity::nonlinear};
  b.linear = check_linearity(b, cfg);
  return b;
}

/// Binary linear span of generator rows.
inline BinaryCodeSet binary_span(const std::vector<BitVector>& rows, std::size_t length, const LinearityCheck& cfg = {}) {
  if (rows.size() > 24) throw DomainError("too many binary generator rows to list the span");
  std::vector<BitVector> words;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
    BitVector w(length, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if ((mask >> r) & 1)
        for (std::size_t i = 0; i < length; ++i) w[i] ^= rows[r][i];
    words.push_back(std::move(w));
  }
  return make_binary_set(length, std::move(words), cfg);
}

inline QuaternaryCodeSet inverse_gray(const BinaryCodeSet& b, const LinearityCheck& cfg = {}) {
  if (b.length % 2) throw DomainError("inverse Gray map needs even length, got " + std::to_string(b.length));
  QuaternaryCodeSet q;
  q.length = b.length / 2;
  q.words.reserve(b.words.size());
  for (const auto& w : b.words) q.words.push_back(inverse_gray_map(w));
  std::sort(q.words.begin(), q.words.end());
  q.linear = check_linearity(q, cfg);
  return q;
}

/// Minimum pairwise distance of a (possibly nonlinear) set; O(|S|^2).
inline unsigned min_pairwise_distance(const QuaternaryCodeSet& q, Metric m) {
  if (q.words.size() < 2) throw DomainError("minimum distance needs at least two codewords");
  unsigned best = std::numeric_limits<unsigned>::max();
  for (std::size_t i = 0; i < q.words.size(); ++i)
    for (std::size_t j = i + 1; j < q.words.size(); ++j) best = std::min(best, distance(m, q.words[i], q.words[j]));
  return best;
}

inline unsigned min_pairwise_distance(const BinaryCodeSet& b) {
  if (b.words.size() < 2) throw DomainError("minimum distance needs at least two codewords");
  unsigned best = std::numeric_limits<unsigned>::max();
  for (std::size_t i = 0; i < b.words.size(); ++i)
    for (std::size_t j = i + 1; j < b.words.size(); ++j) best = std::min(best, hamming_distance_bits(b.words[i], b.words[j]));
  return best;
}

} // namespace z4

#endif // Z4CODES_GRAY_HPP
