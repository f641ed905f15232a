#ifndef Z4CODES_FACTOR_HPP
#define Z4CODES_FACTOR_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "poly.hpp"

namespace z4 {

namespace detail {

// Polynomials over Z2 of degree <= 63 packed into a word, bit i = coeff of x^i.
using BitPoly = std::uint64_t;

inline int bit_degree(BitPoly a) { return a ? 63 - std::countl_zero(a) : -1; }

inline BitPoly bit_mod(BitPoly a, BitPoly f) {
  const int df = bit_degree(f);
  for (int d = bit_degree(a); d >= df; d = bit_degree(a)) a ^= f << (d - df);
  return a;
}

inline BitPoly bit_gcd(BitPoly a, BitPoly b) {
  while (b) {
    BitPoly r = bit_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

/// Arithmetic in GF(2)[x]/<f> for deg f = m <= 63.
class Gf2m {
public:
  Gf2m(BitPoly modulus, unsigned m) : f_(modulus), m_(m) {}

  unsigned degree() const noexcept { return m_; }

  BitPoly mul(BitPoly a, BitPoly b) const {
    BitPoly r = 0;
    for (int i = bit_degree(b); i >= 0; --i) {
      r = shift(r);
      if ((b >> i) & 1U) r ^= a;
    }
    return r;
  }

  BitPoly pow(BitPoly a, std::uint64_t e) const {
    BitPoly r = 1;
    while (e) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

private:
  BitPoly shift(BitPoly a) const {
    const bool top = (a >> (m_ - 1)) & 1U;
    a <<= 1;
    if (top) a ^= f_;
    return m_ == 64 ? a : a & ((BitPoly{1} << m_) - 1);
  }

  BitPoly f_;
  unsigned m_;
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

// Rabin's test: f of degree m is irreducible iff x^(2^m) = x mod f and
// gcd(x^(2^(m/q)) - x, f) = 1 for every prime q | m.
inline bool is_irreducible(BitPoly f, unsigned m) {
  if (m == 1) return true;
  Gf2m ring(f, m);
  auto frobenius = [&](unsigned times) {
    BitPoly v = 2;
    for (unsigned i = 0; i < times; ++i) v = ring.mul(v, v);
    return v;
  };
  if (frobenius(m) != 2) return false;
  for (auto q : prime_factors(m))
    if (bit_gcd(f, frobenius(static_cast<unsigned>(m / q)) ^ 2) != 1) return false;
  return true;
}

/// First irreducible polynomial of degree m in increasing integer order.
inline BitPoly find_irreducible(unsigned m) {
  const BitPoly top = BitPoly{1} << m;
  for (BitPoly low = 1; low < top; low += 2)
    if (is_irreducible(top | low, m)) return top | low;
  throw DomainError("no irreducible polynomial found");  // unreachable
}

} // namespace detail

/// Irreducible factors of x^n - 1 over Z2 for odd n, one per cyclotomic
/// coset, in canonical order (ascending degree, then lexicographic from the
/// highest coefficient).
///
/// Each factor is the minimal polynomial of beta^s over the coset of s, where
/// beta has order n in GF(2^m), m = ord_n(2).
inline std::vector<F2Poly> factor_xn_minus_1_mod2(std::size_t n) {
  const auto cosets = cyclotomic_cosets(n);
  if (n == 1) return {F2Poly::parse("x+1")};

  const std::size_t m = multiplicative_order_of_2(n);
  if (m > 63) throw DomainError("multiplicative order of 2 mod n exceeds 63; unsupported length");

  const detail::Gf2m field(detail::find_irreducible(static_cast<unsigned>(m)), static_cast<unsigned>(m));
  const std::uint64_t group_order = (m == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  const auto n_primes = detail::prime_factors(n);

  detail::BitPoly beta = 0;
  for (detail::BitPoly gamma = 2;; ++gamma) {
    beta = field.pow(gamma, group_order / n);
    bool order_n = true;
    for (auto q : n_primes)
      if (field.pow(beta, n / q) == 1) order_n = false;
    if (order_n) break;
  }

  std::vector<F2Poly> factors;
  for (const auto& coset : cosets.cosets) {
    // product over the coset of (x + beta^j), coefficients in GF(2^m)
    std::vector<detail::BitPoly> poly{1};
    for (auto j : coset) {
      const auto root = field.pow(beta, j);
      std::vector<detail::BitPoly> next(poly.size() + 1, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] ^= poly[i];
        next[i] ^= field.mul(poly[i], root);
      }
      poly = std::move(next);
    }
    std::vector<int> bits;
    for (auto c : poly) {
      if (c > 1) throw DomainError("minimal polynomial left GF(2); internal error");
      bits.push_back(static_cast<int>(c));
    }
    factors.emplace_back(std::move(bits));
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

/// Hensel lift of a Z2 factor of some x^n - 1 (n odd) to the unique monic Z4
/// polynomial dividing x^n - 1 with the same reduction mod 2.
///
/// Graeffe's method: write f2 = e(x^2) + x o(x^2) with e, o lifted to
/// {0,1}-coefficients; then f(x^2) = ±(e(x^2)^2 - x^2 o(x^2)^2) over Z4, the
/// sign chosen so the result is monic.
inline Z4Poly hensel_lift(const F2Poly& f2) {
  if (f2.is_zero()) throw DomainError("cannot lift the zero polynomial");
  if (f2[0] == 0) throw DomainError("x divides " + f2.to_string() + "; it divides no x^n-1 with n odd");
  if (f2.deg() > 0 && gcd(f2, derivative(f2)).deg() != 0)
    throw DomainError(f2.to_string() + " has repeated roots; it divides no x^n-1 with n odd");

  std::vector<int> even, odd;
  for (std::size_t i = 0; i < f2.size(); ++i) (i % 2 ? odd : even).push_back(f2[i]);
  const Z4Poly e(even), o(odd);
  Z4Poly lifted = e * e - Z4Poly::monomial(1) * o * o;
  if (lifted.leading() == 3) lifted = -lifted;
  return lifted;
}

/// Lift with an explicit n, checking f2 | x^n - 1 over Z2 and the lift
/// dividing x^n - 1 over Z4.
inline Z4Poly hensel_lift(const F2Poly& f2, std::size_t n) {
  require_odd_length(n);
  if (f2.is_zero() || !divides(f2, F2Poly::x_n_minus_1(n)))
    throw DomainError(f2.to_string() + " does not divide x^" + std::to_string(n) + "-1 over Z2");
  Z4Poly lifted = hensel_lift(f2);
  if (!divides(lifted, Z4Poly::x_n_minus_1(n)))
    throw DomainError("Hensel lift does not divide x^n-1; internal error");
  return lifted;
}

/// Factorization of x^n - 1 over Z4 into basic irreducibles (lifts of the Z2
/// factors, same order).
inline std::vector<Z4Poly> factor_xn_minus_1_z4(std::size_t n) {
  std::vector<Z4Poly> out;
  for (const auto& f2 : factor_xn_minus_1_mod2(n)) out.push_back(hensel_lift(f2));
  return out;
}

template <unsigned Mod>
Poly<Mod> product(const std::vector<Poly<Mod>>& factors) {
  Poly<Mod> p = Poly<Mod>::constant(1);
  for (const auto& f : factors) p *= f;
  return p;
}

} // namespace z4

#endif // Z4CODES_FACTOR_HPP
