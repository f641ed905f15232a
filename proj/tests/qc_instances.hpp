// Random 1-generator QC instances satisfying the distance-bound hypothesis.
#ifndef Z4CODES_TESTS_QC_INSTANCES_HPP
#define Z4CODES_TESTS_QC_INSTANCES_HPP

#include <random>

#include <z4codes/construct.hpp>
#include <z4codes/factor.hpp>

namespace fixture {

struct QCInstance {
  z4::QCSpec spec;
  z4::Z4Poly g, h;
};

/// p = u g with g a product of lifted factors of x^m - 1 and u in {1, 3};
/// multipliers drawn uniformly and kept only if coprime to h mod 2.
/// max_k1 caps m - deg g so the codes stay small enough to enumerate.
inline QCInstance random_qc_instance(std::mt19937_64& rng, std::size_t m, std::size_t l, std::size_t max_k1) {
  const auto factors = z4::factor_xn_minus_1_z4(m);
  std::uniform_int_distribution<int> coin(0, 1), digit(0, 3);
  for (;;) {
    z4::Z4Poly g = z4::Z4Poly::constant(1), h = z4::Z4Poly::constant(1);
    for (const auto& f : factors) (coin(rng) ? g : h) *= f;
    const std::size_t k1 = m - g.deg();
    if (k1 == 0 || k1 > max_k1) continue;
    const auto h2 = z4::reduce_mod2(h);
    QCInstance inst{{m, coin(rng) ? 3 * g : g, {}}, g, h};
    while (inst.spec.multipliers.size() + 1 < l) {
      std::vector<int> c(m);
      for (auto& x : c) x = digit(rng);
      z4::Z4Poly f(c);
      const auto f2 = z4::reduce_mod2(f);
      if (f2.is_zero() ? h2.deg() == 0 : z4::gcd(f2, h2).deg() == 0) inst.spec.multipliers.push_back(f);
    }
    return inst;
  }
}

} // namespace fixture

#endif
