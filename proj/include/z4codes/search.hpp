#ifndef Z4CODES_SEARCH_HPP
#define Z4CODES_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "binary_table.hpp"
#include "codes.hpp"
#include "construct.hpp"
#include "engine.hpp"
#include "error.hpp"

namespace z4 {

/// How the per-position shift tuples of length t are drawn from {1,2,3}.
enum class ShiftMode {
  /// all 3^t tuples (repetition allowed)
  tuples,
  /// order-preserving subsequences of (1,2,3) without repetition: C(3,t)
  subsequences,
};

struct GcsOptions {
  std::size_t length = 0;     // N
  std::size_t dimension = 0;  // K (free generators)
  std::size_t k2 = 0;         // must be 0
  std::size_t budget = 1;     // T, 1 <= T <= N - K
  /// Overrides the table lookup of the target distance D.
  std::optional<unsigned> target;
  ShiftMode shifts = ShiftMode::tuples;
  /// Shuffle the position-subset order of each scan with `seed`.
  bool randomize = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::function<void(const std::string&)> log;
};

/// Search state. Rows and columns are 1-based as in the flattened-position
/// arithmetic: position p addresses row p / N, column p % N + 1.
struct GcsState {
  std::size_t N = 0, K = 0, T = 0;
  unsigned D = 0;
  std::vector<std::size_t> S;  // mutable flattened positions, ascending
  Z4Matrix G;                  // accumulated K x N generator
  Z4Matrix g_old, g_temp;      // current row candidate (full K x N)
  std::size_t k = 1;
  std::size_t t = 1;
  unsigned d = 1;
  ShiftMode shifts = ShiftMode::tuples;
  bool randomize = false;
  std::mt19937_64 rng{0};
  unsigned jobs = 1;
  std::uint64_t evaluated = 0;  // candidates evaluated for the current row

  std::uint8_t& at(Z4Matrix& m, std::size_t p) const { return m[p / N - 1][p % N]; }
  std::uint8_t at(const Z4Matrix& m, std::size_t p) const { return m[p / N - 1][p % N]; }
};

struct SearchReport {
  bool found = false;
  std::size_t length = 0, dimension = 0;
  unsigned target = 0;
  /// distance of `matrix` (the found code, or best-so-far on failure)
  unsigned achieved = 0;
  Z4Matrix matrix;
  std::optional<Z4LinearCode> code;
  std::vector<std::uint64_t> mutations_per_row;
  std::vector<unsigned> distance_per_row;
  std::size_t final_t = 0;
  double seconds = 0;
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline Z4Matrix add_matrices(const Z4Matrix& a, const Z4Matrix& b) {
  Z4Matrix c = a;
  for (std::size_t r = 0; r < c.size(); ++r)
    for (std::size_t j = 0; j < c[r].size(); ++j) c[r][j] = static_cast<std::uint8_t>((a[r][j] + b[r][j]) & 3);
  return c;
}

inline std::vector<std::vector<std::uint8_t>> shift_tuples(std::size_t t, ShiftMode mode) {
  std::vector<std::vector<std::uint8_t>> out;
  if (mode == ShiftMode::tuples) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < t; ++i) total *= 3;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<std::uint8_t> r(t);
      std::size_t v = idx;
      for (std::size_t i = t; i-- > 0;) {
        r[i] = static_cast<std::uint8_t>(1 + v % 3);
        v /= 3;
      }
      out.push_back(std::move(r));
    }
  } else if (t <= 3) {
    for (unsigned mask = 0; mask < 8; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != t) continue;
      std::vector<std::uint8_t> r;
      for (std::uint8_t s = 1; s <= 3; ++s)
        if (mask & (1U << (s - 1))) r.push_back(s);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// All size-t index subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  if (t > n) return out;
  std::vector<std::size_t> c(t);
  std::iota(c.begin(), c.end(), std::size_t{0});
  for (;;) {
    out.push_back(c);
    std::size_t i = t;
    while (i > 0 && c[i - 1] == n - t + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < t; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Min Lee weight of the span of rows 1..k of m (free, identity pivots),
/// stopping early once a weight <= floor is seen.
inline unsigned gcs_distance(const Z4Matrix& m, std::size_t k, std::size_t n, unsigned floor) {
  Z4Matrix rows(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k));
  WeightEngine engine(n, std::move(rows), std::vector<unsigned>(k, 4));
  return engine.min_weight(Metric::lee, floor).value_or(0);
}

} // namespace detail

inline GcsState make_gcs_state(const GcsOptions& opt, const BinaryRecordTable& table) {
  if (opt.k2 != 0) throw DomainError("GCS builds free codes only (k2 must be 0)");
  if (opt.dimension < 1 || opt.dimension >= opt.length) throw DomainError("GCS needs 1 <= K < N");
  if (opt.budget < 1 || opt.budget > opt.length - opt.dimension) throw DomainError("GCS needs 1 <= T <= N - K");
  GcsState s;
  s.N = opt.length;
  s.K = opt.dimension;
  s.T = opt.budget;
  if (opt.target) {
    s.D = *opt.target;
  } else {
    const auto d = table.distance(2 * opt.length, 2 * opt.dimension);
    if (!d)
      throw DomainError("no target distance: binary table has no entry (" + std::to_string(2 * opt.length) + ", " +
                        std::to_string(2 * opt.dimension) + ")");
    s.D = *d;
  }
  s.G.assign(s.K, Z4Vector(s.N, 0));
  s.shifts = opt.shifts;
  s.randomize = opt.randomize;
  s.rng.seed(opt.seed);
  s.jobs = std::max(1U, opt.jobs);
  return s;
}

/// Prepares row k: extends S with the redundancy positions of row k and
/// seeds G_old with the single pivot G_old[k][k] = 1.
inline void begin_row(GcsState& s) {
  for (std::size_t p = s.K + s.k * s.N; p <= (s.k + 1) * s.N - 1; ++p) s.S.push_back(p);
  s.g_old.assign(s.K, Z4Vector(s.N, 0));
  s.g_old[s.k - 1][s.k - 1] = 1;
  // G_temp starts at the pivot matrix, so a scan without any improvement
  // keeps the pivot instead of zeroing the row
  s.g_temp = s.g_old;
  s.d = 1;
  s.evaluated = 0;
}

enum class ScanResult { improved, exhausted };

/// One pass over all position subsets of size t (outer) and shift tuples
/// (inner). The first candidate whose code has minimum Lee weight > d wins:
/// it becomes G_temp and the pass stops. G_old := G_temp afterwards; t is
/// incremented when nothing improved.
inline ScanResult scan_once(GcsState& s) {
  const auto subsets = detail::index_subsets(s.S.size(), s.t);
  const auto tuples = detail::shift_tuples(s.t, s.shifts);
  std::vector<std::size_t> order(subsets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (s.randomize) std::shuffle(order.begin(), order.end(), s.rng);

  const std::uint64_t total = static_cast<std::uint64_t>(subsets.size()) * tuples.size();
  auto candidate = [&](std::uint64_t idx) {
    const auto& subset = subsets[order[idx / tuples.size()]];
    const auto& r = tuples[idx % tuples.size()];
    Z4Matrix g_new = s.g_old;
    for (std::size_t i = 0; i < s.t; ++i) {
      const std::size_t p = s.S[subset[i]];
      s.at(g_new, p) = static_cast<std::uint8_t>((s.at(s.g_old, p) + r[i]) & 3);
    }
    return g_new;
  };
  auto evaluate = [&](const Z4Matrix& g_new) {
    return detail::gcs_distance(detail::add_matrices(s.G, g_new), s.k, s.N, s.d);
  };

  std::optional<std::uint64_t> winner;
  unsigned winner_d = 0;
  if (s.jobs <= 1) {
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      ++s.evaluated;
      const unsigned d = evaluate(candidate(idx));
      if (d > s.d) {
        winner = idx;
        winner_d = d;
        break;
      }
    }
  } else {
    // batches evaluated in parallel; the earliest improving index wins, so
    // the outcome matches the sequential scan
    const std::uint64_t batch = 64ULL * s.jobs;
    for (std::uint64_t base = 0; base < total && !winner; base += batch) {
      const std::uint64_t end = std::min(total, base + batch);
      std::vector<unsigned> result(end - base, 0);
      std::atomic<std::uint64_t> next{base};
      std::atomic<std::uint64_t> first_hit{end};
      {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < s.jobs; ++j)
          pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < end; i = next++) {
              if (i > first_hit.load()) continue;
              result[i - base] = evaluate(candidate(i));
              if (result[i - base] > s.d) {
                auto cur = first_hit.load();
                while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
                }
              }
            }
          });
      }
      const std::uint64_t hit = first_hit.load();
      if (hit < end) {
        winner = hit;
        winner_d = result[hit - base];
        s.evaluated += hit - base + 1;
      } else {
        s.evaluated += end - base;
      }
    }
  }

  if (winner) {
    s.d = winner_d;
    s.g_temp = candidate(*winner);
  }
  s.g_old = s.g_temp;
  if (!winner) {
    ++s.t;
    return ScanResult::exhausted;
  }
  return ScanResult::improved;
}

/// Repeats scans while t <= T and d < D.
inline void search_suitable_matrix(GcsState& s) {
  while (s.t <= s.T && s.d < s.D) scan_once(s);
}

/// Grows a free [N, 4^K] code row by row, mutating up to t redundancy
/// entries at a time, until every row reaches minimum Lee distance >= D or
/// the mutation size t exceeds T. t is not reset between rows.
inline SearchReport gcs(const GcsOptions& opt, const BinaryRecordTable& table) {
  const auto start = std::chrono::steady_clock::now();
  GcsState s = make_gcs_state(opt, table);
  SearchReport rep;
  rep.length = s.N;
  rep.dimension = s.K;
  rep.target = s.D;
  if (opt.randomize) rep.seed = opt.seed;

  unsigned last_d = 0;
  while (s.t <= s.T && s.k <= s.K) {
    begin_row(s);
    search_suitable_matrix(s);
    rep.mutations_per_row.push_back(s.evaluated);
    rep.distance_per_row.push_back(s.d);
    if (opt.log)
      opt.log("row " + std::to_string(s.k) + ": d=" + std::to_string(s.d) + " t=" + std::to_string(s.t) +
              " candidates=" + std::to_string(s.evaluated));
    if (s.d >= s.D) {
      s.G = detail::add_matrices(s.G, s.g_old);
      last_d = s.d;
      ++s.k;
    } else {
      break;
    }
  }

  rep.found = s.k > s.K;
  rep.final_t = s.t;
  if (rep.found) {
    rep.matrix = s.G;
    rep.achieved = last_d;
    rep.code.emplace(s.N, s.G);
  } else {
    // best so far: accepted rows plus the partial row
    rep.matrix = detail::add_matrices(s.G, s.g_old);
    rep.matrix.resize(std::min(s.k, s.K));
    rep.achieved = s.d;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Quasi-cyclic search: (p, p f_1, ..., p f_{l-1}) over the cyclic codes p.

enum class QCStrategy { exhaustive, random };

struct QCSearchOptions {
  std::size_t m = 0;
  std::size_t blocks = 2;  // l
  QCStrategy strategy = QCStrategy::exhaustive;
  /// Maximum multiplier tuples evaluated per cyclic spec.
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
  EngineOptions engine;
  /// Emit every evaluated candidate instead of only per-spec improvements.
  bool emit_all = false;
};

struct QCReport {
  QCSpec qc;
  std::size_t k1 = 0, k2 = 0;
  unsigned d = 0;
  ClassifyResult classification;
  /// fewer than all multiplier tuples were tried for this spec
  bool budget_exhausted = false;
};

inline QCReport evaluate_qc(const QCSpec& spec, const BinaryRecordTable* table, const EngineOptions& opt = {}) {
  const auto code = build_qc(spec);
  QCReport r{spec, code.k1(), code.k2(), min_lee_distance(code, opt), {}, false};
  r.classification = table ? classify(spec.length(), r.k1, r.k2, Metric::lee, r.d, *table)
                           : ClassifyResult{Classification::unclassified, std::nullopt, "no binary table"};
  return r;
}

/// Iterates multiplier tuples for each spec and emits the improving
/// candidates (or all, with emit_all). Returns the number of candidates
/// evaluated. Zero codes are skipped.
inline std::uint64_t qc_search(const QCSearchOptions& opt, const std::vector<CyclicCodeSpec>& specs,
                               const BinaryRecordTable* table, const std::function<void(const QCReport&)>& emit) {
  if (opt.m == 0 || opt.m % 2 == 0) throw DomainError("QC search needs an odd block length");
  if (opt.blocks < 1) throw DomainError("QC search needs at least one block");
  const std::size_t free_polys = opt.blocks - 1;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> digit(0, 3);

  // total tuples = 4^(m (l-1)), saturating
  const std::size_t digits = opt.m * free_polys;
  const bool huge = digits >= 31;
  const std::uint64_t total = huge ? ~std::uint64_t{0} : std::uint64_t{1} << (2 * digits);

  std::uint64_t evaluated = 0;
  for (const auto& spec : specs) {
    if (spec.n != opt.m) throw DomainError("spec length differs from block length");
    if (spec.p.is_zero()) continue;
    const bool exhaustive = opt.strategy == QCStrategy::exhaustive;
    const std::uint64_t count = exhaustive ? std::min(total, opt.budget) : opt.budget;
    std::optional<unsigned> best;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      QCSpec qc{opt.m, spec.p, {}};
      std::uint64_t v = idx;
      for (std::size_t b = 0; b < free_polys; ++b) {
        std::vector<int> coeffs(opt.m);
        for (auto& c : coeffs) {
          if (exhaustive) {
            c = static_cast<int>(v & 3);
            v >>= 2;
          } else {
            c = digit(rng);
          }
        }
        qc.multipliers.emplace_back(std::move(coeffs));
      }
      auto rep = evaluate_qc(qc, table, opt.engine);
      ++evaluated;
      rep.budget_exhausted = !exhaustive || count < total;
      if (opt.emit_all || !best || rep.d > *best) {
        best = std::max(best.value_or(0), rep.d);
        emit(rep);
      }
    }
  }
  return evaluated;
}

} // namespace z4

#endif // Z4CODES_SEARCH_HPP
