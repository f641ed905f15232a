#ifndef Z4CODES_POLY_HPP
#define Z4CODES_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace z4 {

/// Dense univariate polynomial over Z/Mod, coefficients lowest degree first.
///
/// The representation is always normalized: coefficients are reduced into
/// [0, Mod) and there are no trailing zeros, so the zero polynomial has an
/// empty coefficient vector and degree() == std::nullopt (negative infinity).
template <unsigned Mod>
class Poly {
  static_assert(Mod == 2 || Mod == 4, "only Z2 and Z4 coefficients are supported");

public:
  using coeff_type = std::uint8_t;
  static constexpr unsigned modulus = Mod;

  Poly() = default;

  explicit Poly(std::vector<int> coeffs) {
    c_.reserve(coeffs.size());
    for (int v : coeffs) c_.push_back(reduce(v));
    trim();
  }

  static Poly from_coeffs(std::span<const coeff_type> coeffs) {
    Poly p;
    p.c_.assign(coeffs.begin(), coeffs.end());
    for (auto& v : p.c_) v = static_cast<coeff_type>(v % Mod);
    p.trim();
    return p;
  }

  static Poly constant(int c) { return Poly(std::vector<int>{c}); }

  static Poly monomial(std::size_t k, int c = 1) {
    std::vector<int> v(k + 1, 0);
    v[k] = c;
    return Poly(std::move(v));
  }

  /// x^n - 1
  static Poly x_n_minus_1(std::size_t n) { return monomial(n) - constant(1); }

  bool is_zero() const noexcept { return c_.empty(); }

  /// std::nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }

  /// Degree of a polynomial known to be nonzero; throws otherwise.
  std::size_t deg() const {
    if (c_.empty()) throw DomainError("degree of the zero polynomial is -infinity");
    return c_.size() - 1;
  }

  coeff_type operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  coeff_type leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  std::span<const coeff_type> coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Canonical order: ascending degree, then lexicographic on coefficients
  /// read from the highest power down.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = static_cast<coeff_type>((c_[i] + o.c_[i]) % Mod);
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] = static_cast<coeff_type>((c_[i] + Mod - o.c_[i]) % Mod);
    trim();
    return *this;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = static_cast<coeff_type>((Mod - v) % Mod);
    r.trim();
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<unsigned> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += unsigned(a.c_[i]) * b.c_[j];
    }
    Poly r;
    r.c_.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<coeff_type>(acc[i] % Mod);
    r.trim();
    return r;
  }

  friend Poly operator*(int s, const Poly& a) { return constant(s) * a; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Reduction in Z/Mod[x] / <x^n - 1>: exponents folded modulo n.
  Poly mod_xn_minus_1(std::size_t n) const {
    if (n == 0) throw DomainError("x^0 - 1 is the zero polynomial");
    std::vector<int> v(std::min(n, c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i % n] += c_[i];
    return Poly(std::move(v));
  }

  /// Coefficient vector of length n (polynomial must have degree < n).
  std::vector<coeff_type> to_vector(std::size_t n) const {
    if (c_.size() > n) throw DomainError("polynomial degree exceeds vector length");
    std::vector<coeff_type> v(n, 0);
    std::copy(c_.begin(), c_.end(), v.begin());
    return v;
  }

  std::string to_string() const;
  static Poly parse(std::string_view text);

private:
  static coeff_type reduce(long long v) {
    long long r = v % static_cast<long long>(Mod);
    if (r < 0) r += Mod;
    return static_cast<coeff_type>(r);
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<coeff_type> c_;
};

using F2Poly = Poly<2>;
using Z4Poly = Poly<4>;

template <unsigned Mod>
struct DivMod {
  Poly<Mod> quotient;
  Poly<Mod> remainder;
};

/// Euclidean division by a monic divisor. Over Z4 only monic division is
/// well defined in general, so anything else is rejected.
template <unsigned Mod>
DivMod<Mod> divmod(const Poly<Mod>& a, const Poly<Mod>& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (!b.is_monic()) throw DomainError("division by a non-monic polynomial: " + b.to_string());
  std::vector<int> rem(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = b.deg();
  if (rem.size() <= db) return {Poly<Mod>{}, a};
  std::vector<int> quo(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    int q = ((rem[i] % int(Mod)) + int(Mod)) % int(Mod);
    if (!q) continue;
    quo[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
  }
  rem.resize(db);
  return {Poly<Mod>(std::move(quo)), Poly<Mod>(std::move(rem))};
}

template <unsigned Mod>
Poly<Mod> operator%(const Poly<Mod>& a, const Poly<Mod>& b) {
  return divmod(a, b).remainder;
}

template <unsigned Mod>
Poly<Mod> operator/(const Poly<Mod>& a, const Poly<Mod>& b) {
  return divmod(a, b).quotient;
}

/// b | a, for monic b.
template <unsigned Mod>
bool divides(const Poly<Mod>& b, const Poly<Mod>& a) {
  return divmod(a, b).remainder.is_zero();
}

/// Monic gcd over Z2.
inline F2Poly gcd(F2Poly a, F2Poly b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    F2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Formal derivative over Z2.
inline F2Poly derivative(const F2Poly& a) {
  std::vector<int> v;
  for (std::size_t i = 1; i < a.size(); ++i) v.push_back(int(i % 2) * a[i]);
  return F2Poly(std::move(v));
}

inline F2Poly reduce_mod2(const Z4Poly& a) {
  return F2Poly::from_coeffs(a.coeffs());
}

/// Coefficient-wise embedding of Z2 into {0,1} ⊂ Z4.
inline Z4Poly embed(const F2Poly& a) {
  return Z4Poly::from_coeffs(a.coeffs());
}

// Text format: descending powers, e.g. "x^15+3x^14+2x^13+x+3". The zero
// polynomial is "0".
template <unsigned Mod>
std::string Poly<Mod>::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const unsigned c = c_[i];
    if (!c) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

template <unsigned Mod>
Poly<Mod> Poly<Mod>::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial string");

  std::vector<long long> acc;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("polynomial '" + std::string(text) + "': " + why + " at offset " + std::to_string(pos));
  };
  auto read_number = [&](long long& out) {
    std::size_t start = pos;
    out = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      out = out * 10 + (s[pos] - '0');
      if (out > 1'000'000'000) fail("number too large");
      ++pos;
    }
    return pos > start;
  };

  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    long long coeff = 1;
    bool has_coeff = read_number(coeff);
    if (!has_coeff) coeff = 1;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_coeff) fail("'*' without coefficient");
      ++pos;
    }
    std::size_t exponent = 0;
    if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        long long e = 0;
        if (!read_number(e)) fail("missing exponent");
        exponent = static_cast<std::size_t>(e);
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    if (acc.size() <= exponent) acc.resize(exponent + 1, 0);
    acc[exponent] += sign * coeff;
  }
  std::vector<int> v(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<int>(((acc[i] % Mod) + Mod) % Mod);
  return Poly(std::move(v));
}

} // namespace z4

#endif // Z4CODES_POLY_HPP
