#ifndef Z4CODES_CODES_HPP
#define Z4CODES_CODES_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace z4 {

using Z4Vector = std::vector<std::uint8_t>;
using Z4Matrix = std::vector<Z4Vector>;

enum class Metric { lee, hamming, euclidean };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::lee: return "lee";
    case Metric::hamming: return "hamming";
    case Metric::euclidean: return "euclidean";
  }
  return "?";
}

inline Metric parse_metric(std::string_view s) {
  if (s == "lee") return Metric::lee;
  if (s == "hamming") return Metric::hamming;
  if (s == "euclidean") return Metric::euclidean;
  throw ParseError("unknown metric '" + std::string(s) + "'");
}

/// Per-symbol weights for symbols 0,1,2,3.
constexpr unsigned symbol_weight(Metric m, std::uint8_t s) {
  constexpr unsigned lee[4] = {0, 1, 2, 1};
  constexpr unsigned ham[4] = {0, 1, 1, 1};
  constexpr unsigned euc[4] = {0, 1, 4, 1};
  switch (m) {
    case Metric::lee: return lee[s & 3];
    case Metric::hamming: return ham[s & 3];
    case Metric::euclidean: return euc[s & 3];
  }
  return 0;
}

/// Largest per-symbol weight: weights of length-n vectors lie in [0, max * n].
constexpr unsigned max_symbol_weight(Metric m) {
  return m == Metric::lee ? 2 : m == Metric::hamming ? 1 : 4;
}

inline unsigned weight(Metric m, std::span<const std::uint8_t> v) {
  unsigned w = 0;
  for (auto s : v) w += symbol_weight(m, s);
  return w;
}

inline unsigned lee_weight(std::span<const std::uint8_t> v) { return weight(Metric::lee, v); }
inline unsigned hamming_weight(std::span<const std::uint8_t> v) { return weight(Metric::hamming, v); }
inline unsigned euclidean_weight(std::span<const std::uint8_t> v) { return weight(Metric::euclidean, v); }

inline Z4Vector subtract(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw DomainError("vector length mismatch");
  Z4Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = static_cast<std::uint8_t>((x[i] + 4 - y[i]) & 3);
  return d;
}

inline unsigned distance(Metric m, std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  return weight(m, subtract(x, y));
}

inline unsigned lee_distance(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  return distance(Metric::lee, x, y);
}

// "10321" <-> {1,0,3,2,1}
inline Z4Vector parse_z4_vector(std::string_view s) {
  Z4Vector v;
  for (char ch : s) {
    if (ch < '0' || ch > '3') throw ParseError("invalid Z4 digit '" + std::string(1, ch) + "' in '" + std::string(s) + "'");
    v.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return v;
}

inline std::string format_z4_vector(std::span<const std::uint8_t> v) {
  std::string s;
  for (auto x : v) s += static_cast<char>('0' + (x & 3));
  return s;
}

/// Rows separated by ',', ';' or whitespace.
inline Z4Matrix parse_z4_matrix(std::string_view s) {
  Z4Matrix rows;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    rows.push_back(parse_z4_vector(cur));
    if (rows.back().size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',' || ch == ';' || ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') flush();
    else cur += ch;
  }
  flush();
  return rows;
}

inline std::string format_z4_matrix(const Z4Matrix& m, std::string_view sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += sep;
    s += format_z4_vector(m[i]);
  }
  return s;
}

/// Result of reducing a generator matrix to the block form
///
///     [ I_k1  A1      B1 + 2 B2 ]
///     [ 0     2 I_k2  2 A2      ]
///
/// with A1, A2, B1, B2 binary. Column j of `matrix` is column
/// `column_permutation[j]` of the input. No sign changes are used.
struct StandardForm {
  Z4Matrix matrix;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::vector<std::size_t> column_permutation;
};

inline StandardForm standard_form(Z4Matrix g) {
  StandardForm sf;
  const std::size_t rows = g.size();
  const std::size_t cols = rows ? g.front().size() : 0;
  for (const auto& r : g)
    if (r.size() != cols) throw DomainError("generator rows have different lengths");
  for (auto& r : g)
    for (auto& x : r) x &= 3;
  sf.column_permutation.resize(cols);
  std::iota(sf.column_permutation.begin(), sf.column_permutation.end(), std::size_t{0});

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& r : g) std::swap(r[a], r[b]);
    std::swap(sf.column_permutation[a], sf.column_permutation[b]);
  };
  auto add_multiple = [&](std::size_t dst, std::size_t src, unsigned mult) {
    for (std::size_t c = 0; c < cols; ++c) g[dst][c] = static_cast<std::uint8_t>((g[dst][c] + mult * g[src][c]) & 3);
  };
  auto find_pivot = [&](std::size_t from, bool unit) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t c = from; c < cols; ++c)
      for (std::size_t r = from; r < rows; ++r)
        if (unit ? (g[r][c] & 1) : (g[r][c] == 2)) return {r, c};
    return {rows, cols};
  };

  std::size_t cur = 0;
  // unit pivots
  for (;; ++cur) {
    auto [r, c] = find_pivot(cur, true);
    if (r == rows) break;
    std::swap(g[cur], g[r]);
    swap_cols(cur, c);
    if (g[cur][cur] == 3)
      for (auto& x : g[cur]) x = static_cast<std::uint8_t>((3 * x) & 3);
    for (std::size_t o = 0; o < rows; ++o)
      if (o != cur && g[o][cur]) add_multiple(o, cur, 4 - g[o][cur]);
  }
  sf.k1 = cur;
  // remaining rows are even outside the identity block; pivot on 2s
  for (;; ++cur) {
    auto [r, c] = find_pivot(cur, false);
    if (r == rows) break;
    std::swap(g[cur], g[r]);
    swap_cols(cur, c);
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == cur) continue;
      // even rows: 2 -> 0; unit rows: {2,3} -> {0,1}
      if (g[o][cur] >= 2) add_multiple(o, cur, 1);
    }
  }
  sf.k2 = cur - sf.k1;
  g.resize(cur);
  sf.matrix = std::move(g);
  return sf;
}

/// Z4-linear code given by a generator matrix. The type (k1, k2) is derived
/// from the standard form on construction; redundant rows are allowed.
class Z4LinearCode {
public:
  Z4LinearCode(std::size_t length, Z4Matrix generator) : n_(length), g_(std::move(generator)) {
    for (const auto& r : g_)
      if (r.size() != n_) throw DomainError("generator row length differs from code length");
    sf_ = standard_form(g_);
  }

  explicit Z4LinearCode(Z4Matrix generator) : n_(generator.empty() ? 0 : generator.front().size()) {
    *this = Z4LinearCode(n_, std::move(generator));
  }

  std::size_t length() const noexcept { return n_; }
  const Z4Matrix& generator() const noexcept { return g_; }
  const StandardForm& standard() const noexcept { return sf_; }
  std::size_t k1() const noexcept { return sf_.k1; }
  std::size_t k2() const noexcept { return sf_.k2; }
  bool is_free() const noexcept { return sf_.k2 == 0; }
  bool is_zero() const noexcept { return sf_.k1 + sf_.k2 == 0; }

  /// log2 of the code size: 2 k1 + k2.
  std::size_t log2_size() const noexcept { return 2 * sf_.k1 + sf_.k2; }

  /// Standard-form rows with columns mapped back to the original order,
  /// so they span exactly this code: k1 rows of order 4, then k2 of order 2.
  Z4Matrix basis() const {
    Z4Matrix out(sf_.matrix.size(), Z4Vector(n_, 0));
    for (std::size_t r = 0; r < out.size(); ++r)
      for (std::size_t j = 0; j < n_; ++j) out[r][sf_.column_permutation[j]] = sf_.matrix[r][j];
    return out;
  }

private:
  std::size_t n_;
  Z4Matrix g_;
  StandardForm sf_;
};

} // namespace z4

#endif // Z4CODES_CODES_HPP
