#ifndef Z4CODES_CONSTRUCT_HPP
#define Z4CODES_CONSTRUCT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codes.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "poly.hpp"

namespace z4 {

/// m x m circulant: row i+1 is the cyclic right shift of row i.
inline Z4Matrix circulant(std::span<const std::uint8_t> first_row) {
  const std::size_t m = first_row.size();
  if (m == 0) throw DomainError("circulant of an empty row");
  Z4Matrix out(m, Z4Vector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i][j] = static_cast<std::uint8_t>(first_row[(j + m - i) % m] & 3);
  return out;
}

/// Code spanned by p and its cyclic shifts in Z4[x]/<x^n - 1>.
inline Z4LinearCode cyclic_code(const Z4Poly& p, std::size_t n) {
  return Z4LinearCode(n, circulant(p.mod_xn_minus_1(n).to_vector(n)));
}

/// Monic associate of p when its leading coefficient is a unit.
inline std::optional<Z4Poly> monic_associate(const Z4Poly& p) {
  if (p.is_zero()) return std::nullopt;
  if (p.leading() == 1) return p;
  if (p.leading() == 3) return 3 * p;
  return std::nullopt;
}

/// p | x^n - 1 in Z4[x]. The zero polynomial (zero ideal) counts as dividing.
inline bool divides_xn_minus_1(const Z4Poly& p, std::size_t n) {
  if (p.is_zero()) return true;
  if (auto monic = monic_associate(p)) return divides(*monic, Z4Poly::x_n_minus_1(n));
  // x^n - 1 is odd mod 2, so no multiple of 2 divides it
  if (reduce_mod2(p).is_zero()) return false;
  throw DomainError("divisibility by " + p.to_string() + " (leading coefficient 2) is not supported");
}

/// Cyclic code of odd length n over Z4, described by f g h = x^n - 1: the
/// ideal <f h, 2 f g> of size 4^deg g · 2^deg h.
struct CyclicCodeSpec {
  std::size_t n = 0;
  Z4Poly f, g, h;
  Z4Poly p;  // principal generator f h + 2 f, reduced mod x^n - 1
  bool free = false;

  std::size_t k1() const { return g.deg(); }
  std::size_t k2() const { return h.deg(); }
};

inline Z4Poly principal_generator(const Z4Poly& f, const Z4Poly& h, std::size_t n) {
  return (f * h + 2 * f).mod_xn_minus_1(n);
}

inline Z4Poly principal_generator(const CyclicCodeSpec& spec) { return principal_generator(spec.f, spec.h, spec.n); }

/// Free iff p | x^n - 1. The zero code is reported free (k1 = k2 = 0).
inline bool is_free(const CyclicCodeSpec& spec) { return divides_xn_minus_1(spec.p, spec.n); }

/// Builds a spec from f, g, h, checking f g h = x^n - 1.
inline CyclicCodeSpec make_cyclic_spec(std::size_t n, Z4Poly f, Z4Poly g, Z4Poly h) {
  require_odd_length(n);
  if (f * g * h != Z4Poly::x_n_minus_1(n))
    throw DomainError("f*g*h != x^" + std::to_string(n) + "-1 over Z4");
  CyclicCodeSpec s{n, std::move(f), std::move(g), std::move(h), {}, false};
  s.p = principal_generator(s);
  s.free = is_free(s);
  return s;
}

inline Z4LinearCode cyclic_code(const CyclicCodeSpec& spec) { return cyclic_code(spec.p, spec.n); }

/// The 3^r cyclic codes of odd length n, indexed by a ternary counter over
/// the canonical factor list (factor 0 least significant; digit 0 puts the
/// factor in f, 1 in g, 2 in h). Index 0 is the zero code.
class CyclicCodeRange {
public:
  explicit CyclicCodeRange(std::size_t n) : n_(n), factors_(factor_xn_minus_1_z4(n)) {
    if (factors_.size() > 40) throw DomainError("too many factors to enumerate");
    count_ = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) count_ *= 3;
  }

  std::size_t length() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return count_; }
  const std::vector<Z4Poly>& factors() const noexcept { return factors_; }

  CyclicCodeSpec operator[](std::uint64_t index) const {
    if (index >= count_) throw DomainError("cyclic code index out of range");
    Z4Poly parts[3] = {Z4Poly::constant(1), Z4Poly::constant(1), Z4Poly::constant(1)};
    for (const auto& fac : factors_) {
      parts[index % 3] *= fac;
      index /= 3;
    }
    CyclicCodeSpec s{n_, parts[0], parts[1], parts[2], {}, false};
    s.p = principal_generator(s);
    s.free = is_free(s);
    return s;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < count_; ++i) fn((*this)[i]);
  }

private:
  std::size_t n_;
  std::vector<Z4Poly> factors_;
  std::uint64_t count_ = 1;
};

inline std::vector<CyclicCodeSpec> enumerate_cyclic(std::size_t n) {
  CyclicCodeRange range(n);
  std::vector<CyclicCodeSpec> out;
  out.reserve(range.size());
  range.for_each([&](CyclicCodeSpec s) { out.push_back(std::move(s)); });
  return out;
}

/// 1-generator quasi-cyclic code [circ(p) | circ(p f_1) | ... | circ(p f_{l-1})]
/// with m x m circulant blocks.
struct QCSpec {
  std::size_t m = 0;
  Z4Poly p;
  std::vector<Z4Poly> multipliers;  // l - 1 of them, reduced mod x^m - 1

  std::size_t blocks() const noexcept { return multipliers.size() + 1; }
  std::size_t length() const noexcept { return m * blocks(); }
};

inline Z4LinearCode build_qc(const QCSpec& spec) {
  if (spec.m == 0) throw DomainError("block length must be positive");
  Z4Matrix g(spec.m);
  auto append = [&](const Z4Poly& poly) {
    const auto block = circulant(poly.mod_xn_minus_1(spec.m).to_vector(spec.m));
    for (std::size_t r = 0; r < spec.m; ++r) g[r].insert(g[r].end(), block[r].begin(), block[r].end());
  };
  append(spec.p);
  for (const auto& f : spec.multipliers) append(spec.p * f);
  return Z4LinearCode(spec.length(), std::move(g));
}

enum class BoundCheck { holds, violated, not_guaranteed };

inline std::string_view to_string(BoundCheck b) {
  switch (b) {
    case BoundCheck::holds: return "holds";
    case BoundCheck::violated: return "violated";
    case BoundCheck::not_guaranteed: return "bound not guaranteed";
  }
  return "?";
}

/// Whether the QC distance bound applies: p is a unit multiple of a divisor
/// g of x^m - 1 (nonzero code), and every multiplier is coprime to
/// h = (x^m - 1)/g. Coprimality over Z4 is decided on reductions mod 2.
inline bool qc_bound_hypothesis(const QCSpec& spec) {
  if (spec.m == 0 || spec.m % 2 == 0) return false;
  const auto p = spec.p.mod_xn_minus_1(spec.m);
  const auto g = monic_associate(p);
  if (!g) return false;
  const auto xm1 = Z4Poly::x_n_minus_1(spec.m);
  const auto qr = divmod(xm1, *g);
  if (!qr.remainder.is_zero()) return false;
  const auto h2 = reduce_mod2(qr.quotient);
  for (const auto& f : spec.multipliers) {
    const auto f2 = reduce_mod2(f.mod_xn_minus_1(spec.m));
    if (f2.is_zero()) {
      if (h2.deg() != 0) return false;
      continue;
    }
    if (gcd(f2, h2).deg() != 0) return false;
  }
  return true;
}

/// l · d_cyclic <= d_qc, when the hypothesis holds.
inline BoundCheck qc_bound_check(const QCSpec& spec, unsigned d_cyclic, unsigned d_qc) {
  if (!qc_bound_hypothesis(spec)) return BoundCheck::not_guaranteed;
  return spec.blocks() * d_cyclic <= d_qc ? BoundCheck::holds : BoundCheck::violated;
}

} // namespace z4

#endif // Z4CODES_CONSTRUCT_HPP
