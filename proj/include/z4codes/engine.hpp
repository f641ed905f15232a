#ifndef Z4CODES_ENGINE_HPP
#define Z4CODES_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "packed.hpp"

namespace z4 {

/// Census of codeword weights: weight -> number of codewords.
struct WeightEnumerator {
  Metric metric = Metric::lee;
  std::map<unsigned, std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto& [w, c] : counts) t += c;
    return t;
  }

  /// Smallest weight > 0 that occurs, if any.
  std::optional<unsigned> min_nonzero_weight() const {
    for (auto& [w, c] : counts)
      if (w > 0 && c > 0) return w;
    return std::nullopt;
  }

  friend bool operator==(const WeightEnumerator&, const WeightEnumerator&) = default;
};

struct EngineOptions {
  unsigned jobs = 1;
  /// Number of leading message digits fixed per work chunk; nullopt picks a
  /// split automatically.
  std::optional<std::size_t> split_digits;
  /// Chunks for which this returns true are not enumerated (used to resume
  /// from a checkpoint).
  std::function<bool(std::size_t)> skip_chunk;
  /// Called once per finished chunk with that chunk's histogram, serialized
  /// across workers.
  std::function<void(std::size_t, const std::vector<std::uint64_t>&)> chunk_done;
};

/// Exhaustive enumeration of the Z4-span of a list of rows, where row i is
/// combined with coefficients 0..radix_i-1 (radix 4 for order-4 rows, 2 for
/// rows of the form 2·binary). With an independent basis every codeword is
/// visited exactly once.
///
/// Messages are walked in modular Gray-code order, so each step adds exactly
/// one generator row to the running codeword. The message space is split
/// into chunks by fixing the top `split` digits; chunks run on `jobs`
/// threads and their histograms are summed, so results do not depend on the
/// worker count.
class WeightEngine {
public:
  WeightEngine(std::size_t length, Z4Matrix rows, std::vector<unsigned> radices)
      : n_(length), rows_(std::move(rows)), radix_(std::move(radices)) {
    if (rows_.size() != radix_.size()) throw DomainError("row/radix count mismatch");
    for (const auto& r : rows_)
      if (r.size() != n_) throw DomainError("row length differs from code length");
    for (auto q : radix_)
      if (q != 2 && q != 4) throw DomainError("radix must be 2 or 4");
    if (n_ > 512) throw DomainError("lengths above 512 are not supported by the packed engine");
    // log2 of the message count must fit the 64-bit counters
    std::size_t bits = 0;
    for (auto q : radix_) bits += q == 4 ? 2 : 1;
    if (bits > 62) throw DomainError("code too large to enumerate exhaustively");
  }

  explicit WeightEngine(const Z4LinearCode& code)
      : WeightEngine(code.length(), code.basis(), radices_of(code)) {}

  static std::vector<unsigned> radices_of(const Z4LinearCode& code) {
    std::vector<unsigned> r(code.k1(), 4);
    r.resize(code.k1() + code.k2(), 2);
    return r;
  }

  std::size_t length() const noexcept { return n_; }

  std::uint64_t message_count() const noexcept {
    std::uint64_t c = 1;
    for (auto q : radix_) c *= q;
    return c;
  }

  std::size_t chunk_count(const EngineOptions& opt) const {
    const std::size_t split = split_for(opt);
    std::size_t c = 1;
    for (std::size_t i = radix_.size() - split; i < radix_.size(); ++i) c *= radix_[i];
    return c;
  }

  std::vector<std::uint64_t> histogram(Metric metric, const EngineOptions& opt = {}) const {
    return dispatch_words([&]<std::size_t W>() { return run_histogram<W>(metric, opt); });
  }

  WeightEnumerator enumerator(Metric metric, const EngineOptions& opt = {}) const {
    auto hist = histogram(metric, opt);
    WeightEnumerator e{metric, {}};
    for (std::size_t w = 0; w < hist.size(); ++w)
      if (hist[w]) e.counts[static_cast<unsigned>(w)] = hist[w];
    return e;
  }

  /// Minimum weight over nonzero codewords, scanning until a codeword of
  /// weight <= stop_at is seen (then any such weight may be returned).
  /// Returns nullopt when every codeword is zero.
  std::optional<unsigned> min_weight(Metric metric, unsigned stop_at = 0, const EngineOptions& opt = {}) const {
    return dispatch_words([&]<std::size_t W>() { return run_min<W>(metric, stop_at, opt); });
  }

private:
  template <typename F>
  auto dispatch_words(F&& f) const -> decltype(f.template operator()<1>()) {
    const std::size_t words = (n_ + 63) / 64;
    if (words <= 1) return f.template operator()<1>();
    if (words <= 2) return f.template operator()<2>();
    if (words <= 4) return f.template operator()<4>();
    return f.template operator()<8>();
  }

  std::size_t split_for(const EngineOptions& opt) const {
    const std::size_t k = radix_.size();
    if (opt.split_digits) return std::min(*opt.split_digits, k);
    // aim for ~4^6 chunks on large codes, keeping >= 2^12 messages per chunk
    std::size_t split = 0;
    std::uint64_t chunks = 1, rest = message_count();
    while (split < k && chunks < 4096 && rest / radix_[k - 1 - split] >= 4096) {
      chunks *= radix_[k - 1 - split];
      rest /= radix_[k - 1 - split];
      ++split;
    }
    return split;
  }

  // Visits every codeword of chunk `chunk`; `visit` returns false to stop.
  template <std::size_t W, typename Visit>
  bool walk_chunk(const std::vector<PackedZ4<W>>& packed, std::size_t split, std::size_t chunk, Visit&& visit) const {
    const std::size_t k = radix_.size();
    const std::size_t low = k - split;
    PackedZ4<W> cw{};
    std::size_t rem = chunk;
    for (std::size_t i = low; i < k; ++i) {
      const std::size_t digit = rem % radix_[i];
      rem /= radix_[i];
      for (std::size_t t = 0; t < digit; ++t) cw += packed[i];
    }
    if (!visit(cw)) return false;
    std::vector<unsigned> counter(low, 0);
    for (;;) {
      std::size_t j = 0;
      while (j < low && ++counter[j] == radix_[j]) counter[j++] = 0;
      if (j == low) return true;
      cw += packed[j];
      if (!visit(cw)) return false;
    }
  }

  template <std::size_t W>
  std::vector<PackedZ4<W>> pack() const {
    std::vector<PackedZ4<W>> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(PackedZ4<W>::from(r));
    return p;
  }

  template <typename Body>
  static void parallel_chunks(std::size_t chunks, unsigned jobs, Body&& body) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::size_t>(chunks, 1024))));
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
      for (std::size_t c = next++; c < chunks; c = next++) body(id, c);
    };
    if (jobs == 1) {
      worker(0);
      return;
    }
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
  }

  template <std::size_t W>
  std::vector<std::uint64_t> run_histogram(Metric metric, const EngineOptions& opt) const {
    switch (metric) {
      case Metric::lee: return histogram_impl<W, Metric::lee>(opt);
      case Metric::hamming: return histogram_impl<W, Metric::hamming>(opt);
      case Metric::euclidean: return histogram_impl<W, Metric::euclidean>(opt);
    }
    return {};
  }

  template <std::size_t W, Metric M>
  std::vector<std::uint64_t> histogram_impl(const EngineOptions& opt) const {
    const auto packed = pack<W>();
    const std::size_t split = split_for(opt);
    const std::size_t chunks = chunk_count(opt);
    const std::size_t bins = max_symbol_weight(M) * n_ + 1;
    std::vector<std::uint64_t> total(bins, 0);
    std::mutex mu;
    parallel_chunks(chunks, opt.jobs, [&](unsigned, std::size_t c) {
      if (opt.skip_chunk && opt.skip_chunk(c)) return;
      std::vector<std::uint64_t> local(bins, 0);
      walk_chunk<W>(packed, split, c, [&](const PackedZ4<W>& cw) {
        ++local[cw.template weight<M>()];
        return true;
      });
      std::lock_guard lock(mu);
      for (std::size_t w = 0; w < bins; ++w) total[w] += local[w];
      if (opt.chunk_done) opt.chunk_done(c, local);
    });
    return total;
  }

  template <std::size_t W>
  std::optional<unsigned> run_min(Metric metric, unsigned stop_at, const EngineOptions& opt) const {
    switch (metric) {
      case Metric::lee: return min_impl<W, Metric::lee>(stop_at, opt);
      case Metric::hamming: return min_impl<W, Metric::hamming>(stop_at, opt);
      case Metric::euclidean: return min_impl<W, Metric::euclidean>(stop_at, opt);
    }
    return std::nullopt;
  }

  template <std::size_t W, Metric M>
  std::optional<unsigned> min_impl(unsigned stop_at, const EngineOptions& opt) const {
    const auto packed = pack<W>();
    const std::size_t split = split_for(opt);
    const std::size_t chunks = chunk_count(opt);
    constexpr unsigned none = std::numeric_limits<unsigned>::max();
    std::atomic<unsigned> best{none};
    std::atomic<bool> stop{false};
    parallel_chunks(chunks, opt.jobs, [&](unsigned, std::size_t c) {
      if (stop.load(std::memory_order_relaxed)) return;
      unsigned local = best.load(std::memory_order_relaxed);
      walk_chunk<W>(packed, split, c, [&](const PackedZ4<W>& cw) {
        const unsigned w = cw.template weight<M>();
        if (w > 0 && w < local) {
          local = w;
          if (w <= stop_at) return false;
        }
        return true;
      });
      unsigned cur = best.load();
      while (local < cur && !best.compare_exchange_weak(cur, local)) {
      }
      if (local <= stop_at) stop = true;
    });
    if (best == none) return std::nullopt;
    return best.load();
  }

  std::size_t n_;
  Z4Matrix rows_;
  std::vector<unsigned> radix_;
};

/// Exact minimum distance under `metric`. Throws DomainError on the zero code.
inline unsigned min_distance(const Z4LinearCode& code, Metric metric, const EngineOptions& opt = {}) {
  if (code.is_zero()) throw DomainError("zero code: minimum distance is undefined");
  auto d = WeightEngine(code).min_weight(metric, 1, opt);
  if (!d) throw DomainError("zero code: minimum distance is undefined");
  return *d;
}

inline unsigned min_lee_distance(const Z4LinearCode& c, const EngineOptions& o = {}) {
  return min_distance(c, Metric::lee, o);
}
inline unsigned min_hamming_distance(const Z4LinearCode& c, const EngineOptions& o = {}) {
  return min_distance(c, Metric::hamming, o);
}
inline unsigned min_euclidean_distance(const Z4LinearCode& c, const EngineOptions& o = {}) {
  return min_distance(c, Metric::euclidean, o);
}

inline WeightEnumerator weight_enumerator(const Z4LinearCode& code, Metric metric, const EngineOptions& opt = {}) {
  if (code.is_zero()) return WeightEnumerator{metric, {{0U, 1ULL}}};
  return WeightEngine(code).enumerator(metric, opt);
}

inline WeightEnumerator lee_weight_enumerator(const Z4LinearCode& code, const EngineOptions& opt = {}) {
  return weight_enumerator(code, Metric::lee, opt);
}

/// "0^1 55^774 56^1591 ..." rendering.
inline std::string format_enumerator(const WeightEnumerator& e) {
  std::string s;
  for (auto& [w, c] : e.counts) {
    if (!s.empty()) s += ' ';
    s += std::to_string(w) + '^' + std::to_string(c);
  }
  return s;
}

inline WeightEnumerator parse_enumerator(std::string_view text, Metric metric = Metric::lee) {
  WeightEnumerator e{metric, {}};
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\n' || text[pos] == '\t' || text[pos] == ',')) ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') v = v * 10 + (text[pos++] - '0');
    if (pos == start) throw ParseError("expected a number in enumerator at offset " + std::to_string(pos));
    return v;
  };
  for (skip(); pos < text.size(); skip()) {
    const auto w = number();
    if (pos >= text.size() || text[pos] != '^') throw ParseError("expected '^' in enumerator at offset " + std::to_string(pos));
    ++pos;
    e.counts[static_cast<unsigned>(w)] += number();
  }
  return e;
}

} // namespace z4

#endif // Z4CODES_ENGINE_HPP
