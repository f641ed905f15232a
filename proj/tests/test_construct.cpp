#include <gtest/gtest.h>

#include <random>

#include <z4codes/construct.hpp>
#include <z4codes/engine.hpp>
#include <z4codes/gray.hpp>
#include <z4codes/reference_codes.hpp>

#include "oracles.hpp"
#include "qc_instances.hpp"

using namespace z4;

namespace {

Z4Matrix circ_of(const Z4Poly& p, std::size_t n) { return circulant(p.mod_xn_minus_1(n).to_vector(n)); }

std::uint64_t pow_int(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

} // namespace

TEST(Circulant, Examples) {
  EXPECT_EQ(circulant(Z4Vector{1, 2, 3}), (Z4Matrix{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}));
  EXPECT_EQ(circulant(Z4Vector{2}), (Z4Matrix{{2}}));
  EXPECT_EQ(circulant(Z4Vector{0, 0, 0, 0}), Z4Matrix(4, Z4Vector(4, 0)));
  EXPECT_THROW(circulant(Z4Vector{}), DomainError);
}

TEST(CyclicEnumeration, Counts) {
  EXPECT_EQ(enumerate_cyclic(1).size(), 3u);
  EXPECT_EQ(enumerate_cyclic(3).size(), 9u);
  EXPECT_EQ(enumerate_cyclic(7).size(), 27u);
  EXPECT_EQ(enumerate_cyclic(9).size(), 27u);
  EXPECT_EQ(enumerate_cyclic(15).size(), 243u);
  EXPECT_THROW(enumerate_cyclic(6), DomainError);
}

TEST(CyclicEnumeration, OrderAndEndpoints) {
  const CyclicCodeRange range(3);
  const auto zero = range[0];
  EXPECT_EQ(zero.f, Z4Poly::x_n_minus_1(3));
  EXPECT_TRUE(zero.p.is_zero());
  EXPECT_TRUE(zero.free);
  EXPECT_TRUE(cyclic_code(zero).is_zero());
  // digit 1 for both factors: g = x^3 - 1, the whole ring
  const auto whole = range[1 + 3];
  EXPECT_EQ(whole.g, Z4Poly::x_n_minus_1(3));
  EXPECT_EQ(cyclic_code(whole).k1(), 3u);
  EXPECT_THROW(range[9], DomainError);
}

// Exhaustive span comparison against the two-generator ideal description.
TEST(CyclicEnumeration, IdealSizesAndPrincipalGenerator) {
  for (std::size_t n : {3, 7}) {
    const auto factors = factor_xn_minus_1_z4(n);
    std::size_t free = 0;
    for (const auto& s : enumerate_cyclic(n)) {
      EXPECT_EQ(s.f * s.g * s.h, Z4Poly::x_n_minus_1(n));
      const auto from_p = oracle::span(circ_of(s.p, n), n);
      Z4Matrix two_gen = circ_of(s.f * s.h, n);
      for (auto& r : circ_of(2 * s.f * s.g, n)) two_gen.push_back(r);
      EXPECT_EQ(from_p, oracle::span(two_gen, n));
      EXPECT_EQ(from_p.size(), pow_int(4, s.g.degree().value_or(0)) * pow_int(2, s.h.degree().value_or(0)));

      const auto code = cyclic_code(s);
      EXPECT_EQ(code.k1(), s.k1());
      EXPECT_EQ(code.k2(), s.k2());
      EXPECT_EQ(s.free, code.k2() == 0);
      free += s.free;
    }
    EXPECT_EQ(free, std::size_t{1} << factors.size());
  }
}

TEST(CyclicEnumeration, TypesForLargerLengths) {
  for (std::size_t n : {9, 15}) {
    std::size_t free = 0;
    const CyclicCodeRange range(n);
    range.for_each([&](const CyclicCodeSpec& s) {
      const auto code = cyclic_code(s);
      EXPECT_EQ(code.log2_size(), 2 * s.k1() + s.k2());
      EXPECT_EQ(s.free, code.k2() == 0);
      free += s.free;
    });
    EXPECT_EQ(free, std::size_t{1} << range.factors().size());
  }
}

TEST(PrincipalGenerator, SmallNonFreeExample) {
  const auto s = make_cyclic_spec(3, Z4Poly::constant(1), Z4Poly::parse("x^2+x+1"), Z4Poly::parse("x-1"));
  EXPECT_EQ(s.p.to_string(), "x+1");
  EXPECT_FALSE(s.free);
  EXPECT_EQ(cyclic_code(s).k2(), 1u);
  EXPECT_THROW(make_cyclic_spec(3, Z4Poly::constant(1), Z4Poly::parse("x^2+x+1"), Z4Poly::parse("x+1")),
               DomainError);
}

TEST(PrincipalGenerator, TrivialComplementIsFree) {
  for (const auto& s : enumerate_cyclic(7)) {
    if (s.h != Z4Poly::constant(1)) continue;
    EXPECT_EQ(s.p, (3 * s.f).mod_xn_minus_1(7));
    EXPECT_TRUE(s.free);
  }
}

TEST(ReferenceCode, FastChecks) {
  const auto s = reference::qc86_cyclic_spec();
  EXPECT_EQ(Z4Poly::parse(reference::qc86_g).deg(), 15u);
  EXPECT_EQ(s.p, 3 * s.f);
  EXPECT_TRUE(s.free);
  const auto cyc = cyclic_code(s);
  EXPECT_EQ(cyc.k1(), 15u);
  EXPECT_EQ(cyc.k2(), 0u);
  const auto qc = build_qc(reference::qc86_spec());
  EXPECT_EQ(qc.length(), 86u);
  EXPECT_EQ(qc.k1(), 15u);
  EXPECT_EQ(qc.k2(), 0u);
  // f1 and (x^43-1)/f share the factor x+1 mod 2, so the coprimality
  // hypothesis fails; the inequality itself still holds
  EXPECT_EQ(gcd(reduce_mod2(Z4Poly::parse(reference::qc86_f1)), reduce_mod2(Z4Poly::parse(reference::qc86_g))),
            F2Poly::parse("x+1"));
  EXPECT_FALSE(qc_bound_hypothesis(reference::qc86_spec()));
  EXPECT_EQ(qc_bound_check(reference::qc86_spec(), 16, 55), BoundCheck::not_guaranteed);
  EXPECT_LE(2 * reference::qc86_cyclic_distance, reference::qc86_distance);
  EXPECT_FALSE(gray_image_is_linear(qc));
}

TEST(BuildQC, Examples) {
  // one block: just the cyclic code
  const auto g = Z4Poly::parse("x^3+2x^2+x+3");
  const auto one = build_qc({7, g, {}});
  EXPECT_EQ(oracle::span(one.generator(), 7), oracle::span(cyclic_code(g, 7).generator(), 7));

  const auto qc = build_qc({3, Z4Poly::parse("x+3"), {Z4Poly::constant(1)}});
  EXPECT_EQ(qc.length(), 6u);
  EXPECT_EQ(qc.generator(), (Z4Matrix{{3, 1, 0, 3, 1, 0}, {0, 3, 1, 0, 3, 1}, {1, 0, 3, 1, 0, 3}}));
  const auto words = oracle::span(qc.generator(), 6);
  EXPECT_EQ(words.size(), 16u);
  EXPECT_EQ(qc.k1(), 2u);
  EXPECT_EQ(min_lee_distance(qc), oracle::min_weight(words, Metric::lee));
  EXPECT_EQ(min_lee_distance(qc), 4u);
}

TEST(BoundCheck, Labels) {
  const auto g = Z4Poly::parse("x^3+2x^2+x+3");  // h = (x+3)(x^3+3x^2+2x+3)
  QCSpec ok{7, g, {Z4Poly::constant(1)}};
  EXPECT_TRUE(qc_bound_hypothesis(ok));
  EXPECT_EQ(qc_bound_check(ok, 3, 6), BoundCheck::holds);
  EXPECT_EQ(qc_bound_check(ok, 3, 5), BoundCheck::violated);
  // multiplier x+1 shares a factor with h mod 2
  QCSpec bad{7, g, {Z4Poly::parse("x+1")}};
  EXPECT_FALSE(qc_bound_hypothesis(bad));
  EXPECT_EQ(qc_bound_check(bad, 3, 6), BoundCheck::not_guaranteed);
  // p not a divisor form
  EXPECT_EQ(qc_bound_check({3, Z4Poly::parse("2x+2"), {Z4Poly::constant(1)}}, 1, 2), BoundCheck::not_guaranteed);
  // one block
  EXPECT_EQ(qc_bound_check({7, g, {}}, 3, 3), BoundCheck::holds);
  EXPECT_EQ(to_string(BoundCheck::not_guaranteed), "bound not guaranteed");
}

// Small-scale version of the bound property; the acceptance run covers
// m = 15 and l = 3 as well.
TEST(BoundCheck, HoldsOnRandomHypothesisInstances) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto inst = fixture::random_qc_instance(rng, 7, 2 + i % 2, 4);
    const auto cyc = cyclic_code(inst.g, 7);
    const auto qc = build_qc(inst.spec);
    EXPECT_EQ(qc.k1(), cyc.k1());
    EXPECT_EQ(qc.k2(), cyc.k2());
    for (auto m : {Metric::lee, Metric::hamming}) {
      const unsigned dc = min_distance(cyc, m), dq = min_distance(qc, m);
      EXPECT_LE(inst.spec.blocks() * dc, dq);
    }
    EXPECT_EQ(qc_bound_check(inst.spec, min_lee_distance(cyc), min_lee_distance(qc)), BoundCheck::holds);
  }
}
