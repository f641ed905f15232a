#ifndef Z4CODES_CYCLOTOMIC_HPP
#define Z4CODES_CYCLOTOMIC_HPP

#include <cstddef>
#include <vector>

#include "error.hpp"

namespace z4 {

/// Partition of {0, ..., n-1} into orbits of s -> 2s mod n.
///
/// Each coset lists its elements in orbit order starting from its smallest
/// element; cosets are sorted by that smallest element.
struct CyclotomicCosetSet {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> cosets;

  std::size_t count() const noexcept { return cosets.size(); }
};

inline void require_odd_length(std::size_t n) {
  if (n == 0 || n % 2 == 0)
    throw DomainError("length must be a positive odd integer, got " + std::to_string(n));
}

inline CyclotomicCosetSet cyclotomic_cosets(std::size_t n) {
  require_odd_length(n);
  CyclotomicCosetSet out{n, {}};
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> coset;
    std::size_t e = s;
    do {
      seen[e] = true;
      coset.push_back(e);
      e = (2 * e) % n;
    } while (e != s);
    out.cosets.push_back(std::move(coset));
  }
  return out;
}

/// Smallest m >= 1 with 2^m = 1 (mod n), n odd.
inline std::size_t multiplicative_order_of_2(std::size_t n) {
  require_odd_length(n);
  if (n == 1) return 1;
  std::size_t m = 1;
  std::size_t v = 2 % n;
  while (v != 1) {
    v = (2 * v) % n;
    ++m;
  }
  return m;
}

} // namespace z4

#endif // Z4CODES_CYCLOTOMIC_HPP
