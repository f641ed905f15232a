// Acceptance run: one PASS/FAIL line per criterion. Criterion 5 (the full
// 4^15-codeword verification of the reference QC code) only runs with --full.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <z4codes/z4codes.hpp>

#include "oracles.hpp"
#include "qc_instances.hpp"

using namespace z4;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

const BinaryRecordTable& table() {
  static const auto t = ingest_binary_table(Z4CODES_DEFAULT_TABLE);
  return t;
}

// 1. factorization and lifts for every odd n <= 63
void factorization(Outcome& o) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 63; n += 2) {
    const auto f2 = factor_xn_minus_1_mod2(n);
    const auto f4 = factor_xn_minus_1_z4(n);
    const std::string at = " (n=" + std::to_string(n) + ")";
    o.require(product(f2) == F2Poly::x_n_minus_1(n), "Z2 product" + at);
    o.require(product(f4) == Z4Poly::x_n_minus_1(n), "Z4 product" + at);
    o.require(f2.size() == cyclotomic_cosets(n).count(), "factor count" + at);
    o.require(f4.size() == f2.size(), "lift count" + at);
    for (std::size_t i = 0; i < std::min(f2.size(), f4.size()); ++i)
      o.require(reduce_mod2(f4[i]) == f2[i], "lift reduction" + at);
    ++checked;
  }
  o.detail << checked << " lengths";
}

// 2. cyclic enumeration
void cyclic_enumeration(Outcome& o) {
  const std::map<std::size_t, std::size_t> expect{{3, 9}, {7, 27}, {9, 27}, {15, 243}};
  for (const auto& [n, count] : expect) {
    const auto specs = enumerate_cyclic(n);
    const std::size_t r = factor_xn_minus_1_z4(n).size();
    const std::string at = " (n=" + std::to_string(n) + ")";
    o.require(specs.size() == count, "count" + at);
    std::size_t free = 0;
    for (const auto& s : specs) {
      free += s.free;
      if (n > 7) continue;
      auto circ = [n](const Z4Poly& p) { return circulant(p.mod_xn_minus_1(n).to_vector(n)); };
      const auto ideal_p = oracle::span(circ(s.p), n);
      Z4Matrix two = circ(s.f * s.h);
      for (auto& row : circ(2 * s.f * s.g)) two.push_back(row);
      const std::size_t size = (std::size_t{1} << (2 * s.g.degree().value_or(0))) << s.h.degree().value_or(0);
      o.require(ideal_p.size() == size, "ideal size" + at);
      o.require(ideal_p == oracle::span(two, n), "span(p) != <fh, 2fg>" + at);
    }
    o.require(free == (std::size_t{1} << r), "free count" + at);
  }
  o.detail << "counts 9/27/27/243, spans exhaustive for n=3,7";
}

// 3. Gray isometry
void gray_isometry(Outcome& o) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 64; ++n)
    for (int i = 0; i < 10000; ++i) {
      const auto xy = oracle::random_matrix(rng, 2, n);
      if (lee_distance(xy[0], xy[1]) != hamming_distance_bits(gray_map(xy[0]), gray_map(xy[1]))) {
        o.require(false, "isometry at n=" + std::to_string(n));
        return;
      }
    }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 6;
    const Z4LinearCode code(n, oracle::random_matrix(rng, 1 + i % 3, n));
    const auto words = codewords(code);
    o.require(inverse_gray(gray_image(code)).words == words, "inverse_gray(gray_image(C)) != C");
  }
  o.detail << "64 lengths x 10^4 pairs, 100 codes";
}

// 4. reference code, fast structural checks
void reference_fast(Outcome& o) {
  const auto g = Z4Poly::parse(reference::qc86_g), f = Z4Poly::parse(reference::qc86_f),
             h = Z4Poly::parse(reference::qc86_h);
  o.require(g * f * h == Z4Poly::x_n_minus_1(43), "g f h != x^43 - 1");
  const auto spec = reference::qc86_cyclic_spec();
  o.require(spec.p == 3 * f, "p != 3 f");
  o.require(divides(f, Z4Poly::x_n_minus_1(43)), "p does not divide x^43 - 1");
  o.require(spec.free, "cyclic code not free");
  const auto cyc = cyclic_code(spec);
  o.require(cyc.k1() == 15 && cyc.k2() == 0, "cyclic type");
  const auto qc = build_qc(reference::qc86_spec());
  o.require(qc.length() == 86 && qc.k1() == 15 && qc.k2() == 0, "QC parameters");
  o.require(2 * reference::qc86_cyclic_distance <= reference::qc86_distance, "2 d_cyclic > d_QC");
  o.detail << "[86, 4^15 2^0], 2*" << reference::qc86_cyclic_distance << " <= " << reference::qc86_distance
           << ", bound hypothesis: " << (qc_bound_hypothesis(reference::qc86_spec()) ? "holds" : "does not hold")
           << ", Gray image " << (gray_image_is_linear(qc) ? "linear" : "nonlinear");
}

// 5. reference code, full enumeration (opt-in)
void reference_full(Outcome& o, unsigned jobs) {
  EngineOptions opt;
  opt.jobs = jobs;
  const auto cyc = cyclic_code(reference::qc86_cyclic_spec());
  const unsigned dc = min_lee_distance(cyc, opt);
  o.require(dc == reference::qc86_cyclic_distance, "cyclic d_L = " + std::to_string(dc));
  const auto e = lee_weight_enumerator(build_qc(reference::qc86_spec()), opt);
  const unsigned dq = e.min_nonzero_weight().value_or(0);
  o.require(dq == reference::qc86_distance, "QC d_L = " + std::to_string(dq));
  o.require(e.total() == (std::uint64_t{1} << 30), "total != 4^15");

  // weight 104 is printed as 498636; the census total forces 1498636
  const std::set<unsigned> documented{104};
  const auto printed = parse_enumerator(reference::qc86_enumerator);
  std::set<unsigned> weights;
  for (const auto& [w, c] : e.counts) weights.insert(w);
  for (const auto& [w, c] : printed.counts) weights.insert(w);
  std::size_t mismatches = 0;
  for (auto w : weights) {
    const auto a = e.counts.count(w) ? e.counts.at(w) : 0, b = printed.counts.count(w) ? printed.counts.at(w) : 0;
    if (a == b) continue;
    ++mismatches;
    std::cout << "  enumerator mismatch at weight " << w << ": computed " << a << ", printed " << b
              << (documented.count(w) ? " (documented)" : " (UNEXPECTED)") << "\n";
    o.require(documented.count(w) > 0, "undocumented mismatch at weight " + std::to_string(w));
  }
  o.detail << "d_cyclic=" << dc << " d_QC=" << dq << " total=" << e.total() << " mismatches=" << mismatches;
}

// 6. QC bound on random hypothesis-satisfying instances
void qc_bound(Outcome& o) {
  std::mt19937_64 rng(6);
  std::size_t same_type = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = i % 2 ? 15 : 7, l = 2 + (i / 2) % 2;
    const auto inst = fixture::random_qc_instance(rng, m, l, m == 7 ? 7 : 8);
    o.require(qc_bound_hypothesis(inst.spec), "generated instance violates the hypothesis");
    const auto cyc = cyclic_code(inst.g, m);
    const auto qc = build_qc(inst.spec);
    same_type += qc.k1() == cyc.k1() && qc.k2() == cyc.k2();
    for (auto metric : {Metric::lee, Metric::hamming}) {
      const unsigned dc = min_distance(cyc, metric), dq = min_distance(qc, metric);
      o.require(l * dc <= dq, "l*d > d(C) for m=" + std::to_string(m) + " l=" + std::to_string(l) + " (" +
                                  std::string(to_string(metric)) + ")");
    }
  }
  o.detail << "100 instances, Lee and Hamming; type equal to the cyclic code in " << same_type << "/100";
}

// 7. GCS at desk scale
void gcs_small(Outcome& o) {
  auto check = [&](std::size_t n, std::size_t k, std::size_t t, bool decent_required) {
    GcsOptions opt;
    opt.length = n;
    opt.dimension = k;
    opt.budget = t;
    const auto rep = gcs(opt, table());
    const std::string at = " gcs(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(t) + ")";
    o.require(rep.found, "not found" + at);
    if (!rep.found) return;
    const auto words = oracle::span(rep.matrix, n);
    const unsigned d = oracle::min_weight(words, Metric::lee);
    const Z4LinearCode fresh(n, rep.matrix);
    o.require(fresh.k1() == k && fresh.k2() == 0, "type" + at);
    o.require(d >= rep.target, "re-verified d below target" + at);
    if (decent_required)
      o.require(classify(n, k, 0, Metric::lee, d, table()).value == Classification::decent, "not decent" + at);
    o.detail << at.substr(1) << " d=" << d << " (D=" << rep.target << ") ";
  };
  check(3, 1, 2, true);
  for (std::size_t t = 1; t <= 3; ++t) check(10, 1, t, true);
}

// 8. record store semantics
void database(Outcome& o) {
  const auto dir = std::filesystem::temp_directory_path() / ("z4codes-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  {
    RecordStore store(dir / "db.jsonl");
    std::mt19937_64 rng(8);
    std::vector<std::string> ids;
    std::map<std::string, std::string> lines;
    auto slurp = [&] {
      std::ifstream in(store.path(), std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    std::string prev = slurp();
    for (int i = 0; i < 1000 && o.pass; ++i) {
      const auto op = rng() % 4;
      if (op == 0 || ids.empty()) {
        const std::size_t n = 2 + rng() % 4;
        auto rows = oracle::random_matrix(rng, 1, n);
        rows[0][0] = 1;
        const Z4LinearCode code(n, rows);
        CodeRecord r;
        r.n = n;
        r.k1 = code.k1();
        r.k2 = code.k2();
        r.d = 1 + rng() % 3;
        r.construction = MatrixDescriptor{false, n, rows};
        ids.push_back(store.add(r));
        lines[ids.back()] = store.get(ids.back())->line;
      } else if (op == 1) {
        store.verify(ids[rng() % ids.size()]);
      } else if (op == 2) {
        RecordFilter f;
        f.best_only = rng() % 2;
        for (const auto& r : store.query(f)) o.require(r.line == lines.at(r.record.id), "record changed");
      } else {
        CodeRecord dup;
        dup.id = ids[rng() % ids.size()];
        dup.construction = MatrixDescriptor{false, 1, {{1}}};
        try {
          store.add(dup);
          o.require(false, "duplicate id accepted");
        } catch (const DomainError&) {
        }
      }
      const auto now = slurp();
      o.require(now.compare(0, prev.size(), prev) == 0, "existing content rewritten at op " + std::to_string(i));
      prev = now;
    }
    for (const auto& [id, line] : lines) o.require(store.get(id)->line == line, "record " + id + " changed");

    // planted false distance, truth by brute force
    const Z4Matrix rows{{1, 0, 1, 1, 2, 3}, {0, 1, 3, 2, 1, 1}};
    const unsigned truth = oracle::min_weight(oracle::span(rows, 6), Metric::lee);
    CodeRecord planted;
    planted.n = 6;
    planted.k1 = 2;
    planted.d = truth + 1;
    planted.construction = MatrixDescriptor{false, 6, rows};
    const auto id = store.add(planted);
    const auto v = store.verify(id);
    o.require(v.status == VerificationStatus::disputed && store.get(id)->status == VerificationStatus::disputed,
              "planted record not disputed");
    o.detail << ids.size() << " records, planted d=" << truth + 1 << " vs " << truth << " -> "
             << to_string(store.get(id)->status);
  }
  std::filesystem::remove_all(dir);
  const auto cls = classify(86, 15, 0, Metric::lee, reference::qc86_distance, table());
  o.require(cls.value == Classification::good, "reference code not classified good");
  o.detail << ", reference code: " << to_string(cls.value);
}

// 9. engine against the naive enumerator
void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 50) {
    const std::size_t n = 1 + rng() % 40, rows = 1 + rng() % 6;
    const Z4LinearCode code(n, oracle::random_matrix(rng, rows, n));
    if (code.is_zero() || code.log2_size() > 12) continue;
    const auto words = oracle::span(code.generator(), n);
    o.require(min_lee_distance(code) == oracle::min_weight(words, Metric::lee), "min_lee_distance");
    o.require(lee_weight_enumerator(code).counts == oracle::enumerator(words, Metric::lee), "lee_weight_enumerator");
    ++done;
  }
  o.detail << done << " codes";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  bool full = false;
  unsigned jobs = 1;
  std::vector<int> only;
  app.add_flag("--full", full, "also run the long 4^15-codeword verification (criterion 5)");
  app.add_option("--jobs", jobs, "worker threads for criterion 5");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, factorization},   {2, cyclic_enumeration},
      {3, gray_isometry},   {4, reference_fast},
      {5, [&](Outcome& o) { reference_full(o, jobs); }},
      {6, qc_bound},        {7, gcs_small},
      {8, database},        {9, oracle_equivalence},
  };
  bool all = true;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    if (id == 5 && !full) {
      std::cout << "criterion 5: SKIP (opt-in, pass --full)\n";
      continue;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f s", s);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << secs << ") " << o.detail.str()
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
