#include <gtest/gtest.h>

#include <random>

#include <z4codes/codes.hpp>
#include <z4codes/engine.hpp>

#include "oracles.hpp"

using namespace z4;

TEST(Weights, Examples) {
  EXPECT_EQ(lee_weight(Z4Vector{0, 1, 2, 3}), 4u);
  EXPECT_EQ(hamming_weight(Z4Vector{0, 2, 0}), 1u);
  EXPECT_EQ(euclidean_weight(Z4Vector{2, 2}), 8u);
  EXPECT_EQ(lee_distance(Z4Vector{1, 0}, Z4Vector{3, 0}), 2u);
}

TEST(Weights, Bounds) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const auto v = oracle::random_matrix(rng, 1, 1 + i % 40)[0];
    EXPECT_LE(hamming_weight(v), v.size());
    EXPECT_LE(lee_weight(v), 2 * v.size());
    EXPECT_LE(euclidean_weight(v), 4 * v.size());
  }
}

TEST(Packed, WeightsMatchScalar) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto v = oracle::random_matrix(rng, 1, 1 + i % 128)[0];
    const auto p = PackedZ4<2>::from(v);
    EXPECT_EQ(p.weight<Metric::lee>(), lee_weight(v));
    EXPECT_EQ(p.weight<Metric::hamming>(), hamming_weight(v));
    EXPECT_EQ(p.weight<Metric::euclidean>(), euclidean_weight(v));
  }
}

TEST(MatrixText, RoundTrip) {
  const auto m = parse_z4_matrix("10321, 01232;");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(format_z4_matrix(m), "10321,01232");
  EXPECT_THROW(parse_z4_matrix("104"), ParseError);
  EXPECT_THROW(parse_z4_matrix("10,1"), ParseError);
}

TEST(StandardForm, Examples) {
  auto sf = standard_form({{2}});
  EXPECT_EQ(sf.k1, 0u);
  EXPECT_EQ(sf.k2, 1u);

  sf = standard_form({{1, 1, 3}, {0, 2, 2}});
  EXPECT_EQ(sf.k1, 1u);
  EXPECT_EQ(sf.k2, 1u);
  EXPECT_EQ(sf.matrix, (Z4Matrix{{1, 1, 3}, {0, 2, 2}}));

  sf = standard_form({{2, 1}});
  EXPECT_EQ(sf.k1, 1u);
  EXPECT_EQ(sf.k2, 0u);
  EXPECT_EQ(sf.matrix, (Z4Matrix{{1, 2}}));
  EXPECT_EQ(sf.column_permutation, (std::vector<std::size_t>{1, 0}));
  // same 4 codewords up to the column swap
  EXPECT_EQ(oracle::span({{2, 1}}, 2).size(), 4u);

  sf = standard_form({{0, 0}, {0, 0}});
  EXPECT_EQ(sf.k1 + sf.k2, 0u);
  EXPECT_TRUE(sf.matrix.empty());
}

// Block shape of the standard form plus exhaustive span equality.
TEST(StandardForm, PreservesSpanOnRandomCodes) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t rows = 1 + iter % 5, cols = 2 + iter % 6;
    auto g = oracle::random_matrix(rng, rows, cols);
    if (iter % 3 == 0)
      for (auto& r : g)
        for (auto& x : r) x = static_cast<std::uint8_t>((x * 2) % 4);
    const auto sf = standard_form(g);
    const std::size_t k = sf.k1 + sf.k2;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        const std::uint8_t expect = r == c ? (r < sf.k1 ? 1 : 2) : 0;
        if (r >= sf.k1 || c < sf.k1) EXPECT_EQ(sf.matrix[r][c], expect);
        else EXPECT_LE(sf.matrix[r][c], 1);  // A1 is binary
      }
    for (std::size_t r = sf.k1; r < k; ++r)
      for (auto x : sf.matrix[r]) EXPECT_EQ(x % 2, 0);

    Z4Matrix permuted(g.size(), Z4Vector(cols));
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t j = 0; j < cols; ++j) permuted[r][j] = g[r][sf.column_permutation[j]];
    const auto want = oracle::span(permuted, cols);
    EXPECT_EQ(oracle::span(sf.matrix, cols), want);
    EXPECT_EQ(want.size(), (std::size_t{1} << (2 * sf.k1 + sf.k2)));

    const Z4LinearCode code(cols, g);
    EXPECT_EQ(oracle::span(code.basis(), cols), oracle::span(g, cols));
    EXPECT_EQ(code.is_free(), code.k2() == 0);
  }
}

TEST(Engine, SmallExamples) {
  EXPECT_EQ(min_lee_distance(Z4LinearCode({{1, 1, 1}})), 3u);
  EXPECT_EQ(min_lee_distance(Z4LinearCode({{1, 1, 2}})), 4u);
  const auto e = lee_weight_enumerator(Z4LinearCode({{1, 1, 2}}));
  EXPECT_EQ(e.counts, (std::map<unsigned, std::uint64_t>{{0, 1}, {4, 3}}));
  const auto zero = lee_weight_enumerator(Z4LinearCode(3, {{0, 0, 0}}));
  EXPECT_EQ(zero.counts, (std::map<unsigned, std::uint64_t>{{0, 1}}));
  EXPECT_THROW(min_lee_distance(Z4LinearCode(3, {{0, 0, 0}})), DomainError);
  EXPECT_THROW(min_lee_distance(Z4LinearCode(3, {})), DomainError);
}

TEST(Engine, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t rows = 1 + iter % 6, cols = 1 + (iter * 7) % 70;
    const auto g = oracle::random_matrix(rng, rows, cols);
    const Z4LinearCode code(cols, g);
    const auto words = oracle::span(g, cols);
    for (auto m : {Metric::lee, Metric::hamming, Metric::euclidean}) {
      const auto e = weight_enumerator(code, m);
      EXPECT_EQ(e.counts, oracle::enumerator(words, m));
      EXPECT_EQ(e.total(), words.size());
      if (!code.is_zero()) {
        EXPECT_EQ(min_distance(code, m), oracle::min_weight(words, m));
        EXPECT_EQ(e.min_nonzero_weight(), min_distance(code, m));
      }
    }
  }
}

TEST(Engine, WorkerCountAndSplitDoNotChangeResults) {
  std::mt19937_64 rng(5);
  const auto g = oracle::random_matrix(rng, 7, 90);
  const Z4LinearCode code(90, g);
  const auto ref = lee_weight_enumerator(code);
  for (unsigned jobs : {1U, 2U, 5U})
    for (std::size_t split : {0, 1, 3, 7}) {
      EngineOptions opt;
      opt.jobs = jobs;
      opt.split_digits = split;
      EXPECT_EQ(lee_weight_enumerator(code, opt), ref);
      EXPECT_EQ(min_lee_distance(code, opt), *ref.min_nonzero_weight());
    }
}

TEST(Engine, ChunkCallbacksAndSkipping) {
  std::mt19937_64 rng(6);
  const Z4LinearCode code(20, oracle::random_matrix(rng, 5, 20));
  WeightEngine engine(code);
  EngineOptions opt;
  opt.split_digits = 2;
  const std::size_t chunks = engine.chunk_count(opt);
  std::vector<std::uint64_t> from_chunks(41, 0);
  std::size_t seen = 0;
  opt.chunk_done = [&](std::size_t, const std::vector<std::uint64_t>& h) {
    ++seen;
    for (std::size_t w = 0; w < h.size(); ++w) from_chunks[w] += h[w];
  };
  const auto total = engine.histogram(Metric::lee, opt);
  EXPECT_EQ(seen, chunks);
  EXPECT_EQ(from_chunks, total);

  // resuming: skipped chunks plus the rest add up to the whole
  EngineOptions half;
  half.split_digits = 2;
  half.skip_chunk = [](std::size_t c) { return c % 2 == 0; };
  EngineOptions other;
  other.split_digits = 2;
  other.skip_chunk = [](std::size_t c) { return c % 2 == 1; };
  auto a = engine.histogram(Metric::lee, half), b = engine.histogram(Metric::lee, other);
  for (std::size_t w = 0; w < a.size(); ++w) EXPECT_EQ(a[w] + b[w], total[w]);
}

TEST(Enumerator, TextRoundTrip) {
  const auto e = parse_enumerator("0^1 4^3");
  EXPECT_EQ(format_enumerator(e), "0^1 4^3");
  EXPECT_EQ(e.total(), 4u);
  EXPECT_THROW(parse_enumerator("0^"), ParseError);
  EXPECT_THROW(parse_enumerator("7"), ParseError);
}
