// z4codes: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 usage or parse error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <z4codes/z4codes.hpp>

using namespace z4;
using json = nlohmann::ordered_json;

namespace {

struct Common {
  bool json_out = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string table = Z4CODES_DEFAULT_TABLE;

  EngineOptions engine() const {
    EngineOptions o;
    o.jobs = jobs;
    return o;
  }
  const BinaryRecordTable& binary_table() const {
    if (!cache) cache = ingest_binary_table(table);
    return *cache;
  }
  mutable std::optional<BinaryRecordTable> cache;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::vector<std::string> poly_strings(const std::vector<Z4Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string pairs(const BitVector& bits) {
  std::string s;
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    if (i) s += ' ';
    s += bits[i] ? '1' : '0';
    if (i + 1 < bits.size()) s += bits[i + 1] ? '1' : '0';
  }
  return s;
}

std::string strip_spaces(std::string s) {
  std::erase_if(s, [](char c) { return c == ' ' || c == '_' || c == ','; });
  return s;
}

std::string type_string(std::size_t n, std::size_t k1, std::size_t k2) {
  return "[" + std::to_string(n) + ", 4^" + std::to_string(k1) + " 2^" + std::to_string(k2) + "]";
}

json classification_json(const ClassifyResult& c) {
  json j{{"class", to_string(c.value)}};
  if (c.reference) j["binary_reference"] = *c.reference;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

std::string classification_text(const ClassifyResult& c) {
  std::string s(to_string(c.value));
  if (c.reference) s += " (best binary d = " + std::to_string(*c.reference) + ")";
  if (!c.reason.empty()) s += " (" + c.reason + ")";
  return s;
}

// ---- factor ----------------------------------------------------------------

int cmd_factor(const Common& c, std::size_t n) {
  const auto f2 = factor_xn_minus_1_mod2(n);
  const auto f4 = factor_xn_minus_1_z4(n);
  const bool ok2 = product(f2) == F2Poly::x_n_minus_1(n), ok4 = product(f4) == Z4Poly::x_n_minus_1(n);
  if (c.json_out) {
    json j{{"n", n}, {"z2", json::array()}, {"z4", poly_strings(f4)}, {"product_ok", ok2 && ok4}};
    for (const auto& f : f2) j["z2"].push_back(f.to_string());
    emit(j);
  } else {
    std::cout << "x^" << n << "-1 over Z2: " << f2.size() << " factors\n";
    for (const auto& f : f2) std::cout << "  " << f.to_string() << "\n";
    std::cout << "x^" << n << "-1 over Z4: " << f4.size() << " factors\n";
    for (const auto& f : f4) std::cout << "  " << f.to_string() << "\n";
    std::cout << "product check " << (ok2 && ok4 ? "OK" : "FAILED") << "\n";
  }
  return ok2 && ok4 ? 0 : 1;
}

// ---- cyclic-enum -----------------------------------------------------------

int cmd_cyclic_enum(const Common& c, std::size_t n, bool distance) {
  const CyclicCodeRange range(n);
  if (!c.json_out) std::cout << "n = " << n << ", r = " << range.factors().size() << ", " << range.size() << " codes\n";
  for (std::uint64_t i = 0; i < range.size(); ++i) {
    const auto s = range[i];
    const auto code = cyclic_code(s);
    std::optional<unsigned> d;
    if (distance && !code.is_zero()) d = min_lee_distance(code, c.engine());
    if (c.json_out) {
      json j{{"index", i},           {"n", n},         {"f", s.f.to_string()}, {"g", s.g.to_string()},
             {"h", s.h.to_string()}, {"p", s.p.to_string()}, {"k1", code.k1()},      {"k2", code.k2()},
             {"free", s.free}};
      if (d) j["d_lee"] = *d;
      emit(j);
    } else {
      std::cout << std::setw(4) << i << "  " << type_string(n, code.k1(), code.k2()) << (s.free ? " free" : "")
                << (d ? "  d_L=" + std::to_string(*d) : "") << "\n      f = " << s.f.to_string()
                << "\n      g = " << s.g.to_string() << "\n      h = " << s.h.to_string()
                << "\n      p = " << s.p.to_string() << "\n";
    }
  }
  return 0;
}

// ---- qc-build / qc-search --------------------------------------------------

int cmd_qc_build(const Common& c, std::size_t m, const std::string& p, const std::vector<std::string>& mult,
                 bool enumerator, bool show_matrix) {
  QCSpec spec{m, Z4Poly::parse(p), {}};
  for (const auto& s : mult) spec.multipliers.push_back(Z4Poly::parse(s));
  const auto code = build_qc(spec);
  if (code.is_zero()) throw DomainError("p generates the zero code");
  const auto cyc = cyclic_code(spec.p, m);
  const unsigned dc = min_lee_distance(cyc, c.engine());
  std::optional<WeightEnumerator> e;
  unsigned d;
  if (enumerator) {
    e = lee_weight_enumerator(code, c.engine());
    d = *e->min_nonzero_weight();
  } else {
    d = min_lee_distance(code, c.engine());
  }
  const auto bound = qc_bound_check(spec, dc, d);
  const auto cls = classify(code.length(), code.k1(), code.k2(), Metric::lee, d, c.binary_table());
  if (c.json_out) {
    json j{{"m", m},
           {"p", spec.p.to_string()},
           {"multipliers", poly_strings(spec.multipliers)},
           {"n", code.length()},
           {"k1", code.k1()},
           {"k2", code.k2()},
           {"d_lee", d},
           {"cyclic_d_lee", dc},
           {"bound_hypothesis", qc_bound_hypothesis(spec)},
           {"bound", to_string(bound)},
           {"classification", classification_json(cls)}};
    if (show_matrix) j["generator"] = format_z4_matrix(code.generator());
    if (e) j["enumerator"] = format_enumerator(*e);
    emit(j);
  } else {
    std::cout << "QC code " << type_string(code.length(), code.k1(), code.k2()) << ", d_L = " << d << "\n"
              << "cyclic code of p: d_L = " << dc << "\n"
              << "bound " << spec.blocks() << "*" << dc << " <= " << d << ": " << to_string(bound)
              << (qc_bound_hypothesis(spec) ? "" : " (coprimality hypothesis does not hold)") << "\n"
              << "classification: " << classification_text(cls) << "\n";
    if (show_matrix) std::cout << "generator:\n" << format_z4_matrix(code.generator(), "\n") << "\n";
    if (e) std::cout << "Lee weight enumerator: " << format_enumerator(*e) << "\n";
  }
  return 0;
}

int cmd_qc_search(const Common& c, QCSearchOptions opt, bool random) {
  opt.strategy = random ? QCStrategy::random : QCStrategy::exhaustive;
  opt.seed = c.seed;
  opt.engine = c.engine();
  const auto specs = enumerate_cyclic(opt.m);
  const auto evaluated = qc_search(opt, specs, &c.binary_table(), [&](const QCReport& r) {
    if (c.json_out) {
      emit(json{{"m", r.qc.m},
                {"p", r.qc.p.to_string()},
                {"multipliers", poly_strings(r.qc.multipliers)},
                {"n", r.qc.length()},
                {"k1", r.k1},
                {"k2", r.k2},
                {"d_lee", r.d},
                {"classification", classification_json(r.classification)},
                {"budget_exhausted", r.budget_exhausted}});
    } else {
      std::cout << type_string(r.qc.length(), r.k1, r.k2) << " d_L=" << r.d << " "
                << classification_text(r.classification) << "  p=" << r.qc.p.to_string();
      for (const auto& f : r.qc.multipliers) std::cout << "  f=" << f.to_string();
      std::cout << "\n";
    }
  });
  std::clog << "evaluated " << evaluated << " candidates\n";
  return 0;
}

// ---- gcs -------------------------------------------------------------------

int cmd_gcs(const Common& c, GcsOptions opt, bool subsequences, const std::string& store) {
  opt.shifts = subsequences ? ShiftMode::subsequences : ShiftMode::tuples;
  opt.seed = c.seed;
  opt.jobs = c.jobs;
  opt.log = [](const std::string& line) { std::clog << line << "\n"; };
  const auto rep = gcs(opt, c.binary_table());
  std::optional<ClassifyResult> cls;
  if (rep.found) cls = classify(rep.length, rep.dimension, 0, Metric::lee, rep.achieved, c.binary_table());
  std::string id;
  if (rep.found && !store.empty()) {
    CodeRecord r;
    r.n = rep.length;
    r.k1 = rep.dimension;
    r.d = rep.achieved;
    r.construction = MatrixDescriptor{true, rep.length, rep.matrix};
    r.source = "gcs T=" + std::to_string(opt.budget) + " seed=" + std::to_string(c.seed);
    id = RecordStore(store).add(r);
  }
  if (c.json_out) {
    json j{{"found", rep.found},
           {"n", rep.length},
           {"k", rep.dimension},
           {"target", rep.target},
           {"d_lee", rep.achieved},
           {"matrix", format_z4_matrix(rep.matrix)},
           {"mutations_per_row", rep.mutations_per_row},
           {"distance_per_row", rep.distance_per_row},
           {"final_t", rep.final_t},
           {"seconds", rep.seconds}};
    if (rep.seed) j["seed"] = *rep.seed;
    if (cls) j["classification"] = classification_json(*cls);
    if (!id.empty()) j["record_id"] = id;
    emit(j);
  } else {
    std::cout << (rep.found ? "found " : "not found; best ") << type_string(rep.length, rep.dimension, 0)
              << " d_L = " << rep.achieved << " (target " << rep.target << ", final t = " << rep.final_t << ")\n"
              << format_z4_matrix(rep.matrix, "\n") << "\n";
    if (cls) std::cout << "classification: " << classification_text(*cls) << "\n";
    if (!id.empty()) std::cout << "stored as " << id << "\n";
  }
  return rep.found ? 0 : 1;
}

// ---- gray / ungray ---------------------------------------------------------

int cmd_gray(const Common& c, const std::string& word) {
  const auto v = parse_z4_vector(strip_spaces(word));
  const auto b = gray_map(v);
  if (c.json_out) emit(json{{"z4", format_z4_vector(v)}, {"binary", format_bits(b)}});
  else std::cout << pairs(b) << "\n";
  return 0;
}

int cmd_ungray(const Common& c, const std::string& bits) {
  const auto b = parse_bits(strip_spaces(bits));
  const auto v = inverse_gray_map(b);
  if (c.json_out) emit(json{{"binary", format_bits(b)}, {"z4", format_z4_vector(v)}});
  else std::cout << format_z4_vector(v) << "\n";
  return 0;
}

// ---- dist ------------------------------------------------------------------

int cmd_dist(const Common& c, const std::string& matrix, const std::string& metric_name, bool enumerator) {
  const auto rows = parse_z4_matrix(matrix);
  if (rows.empty()) throw ParseError("empty matrix");
  const Z4LinearCode code(rows.front().size(), rows);
  std::vector<Metric> metrics;
  if (metric_name == "all") metrics = {Metric::lee, Metric::hamming, Metric::euclidean};
  else metrics = {parse_metric(metric_name)};
  json j{{"n", code.length()}, {"k1", code.k1()}, {"k2", code.k2()}};
  if (!c.json_out) std::cout << "code " << type_string(code.length(), code.k1(), code.k2()) << "\n";
  for (auto m : metrics) {
    const std::string name(to_string(m));
    if (enumerator) {
      const auto e = weight_enumerator(code, m, c.engine());
      const auto d = e.min_nonzero_weight();
      if (!d) throw DomainError("zero code: minimum distance is undefined");
      j["d_" + name] = *d;
      j["enumerator_" + name] = format_enumerator(e);
      if (!c.json_out) std::cout << name << " distance " << *d << "\n" << name << " enumerator " << format_enumerator(e) << "\n";
    } else {
      const unsigned d = min_distance(code, m, c.engine());
      j["d_" + name] = d;
      if (!c.json_out) std::cout << name << " distance " << d << "\n";
    }
  }
  if (c.json_out) emit(j);
  return 0;
}

// ---- db --------------------------------------------------------------------

json stored_json(const StoredRecord& s) {
  json j{{"record", json::parse(serialize_record(s.record))}, {"status", to_string(s.status)}};
  if (!s.status_at.empty()) j["status_at"] = s.status_at;
  if (s.recomputed_d) j["recomputed_d"] = *s.recomputed_d;
  return j;
}

void print_stored(const StoredRecord& s, const BinaryRecordTable& t) {
  const auto& r = s.record;
  std::cout << r.id << "  " << type_string(r.n, r.k1, r.k2) << " " << to_string(r.metric) << " d=" << r.d << "  "
            << construction_kind(r.construction) << "  " << to_string(s.status) << "  "
            << to_string(classify(r.n, r.k1, r.k2, r.metric, r.d, t).value) << "  " << r.created_at
            << (r.source.empty() ? "" : "  " + r.source) << "\n";
}

struct DbAddArgs {
  std::string record_line, matrix, qc_p, cyclic_f, cyclic_g, cyclic_h, inverse_gray, metric = "lee", source;
  std::vector<std::string> mult;
  std::size_t n = 0;
  std::optional<std::size_t> k1, k2;
  std::optional<unsigned> d;
  bool gcs = false;
};

int cmd_db_add(const Common& c, const std::string& store, const DbAddArgs& a) {
  CodeRecord r;
  if (!a.record_line.empty()) {
    r = parse_record(a.record_line);
  } else {
    r.metric = parse_metric(a.metric);
    r.source = a.source;
    std::optional<Z4LinearCode> code;
    if (!a.matrix.empty()) {
      const auto rows = parse_z4_matrix(a.matrix);
      if (rows.empty()) throw ParseError("empty matrix");
      r.construction = MatrixDescriptor{a.gcs, rows.front().size(), rows};
      code.emplace(rows.front().size(), rows);
    } else if (!a.qc_p.empty()) {
      QCSpec q{a.n, Z4Poly::parse(a.qc_p), {}};
      for (const auto& s : a.mult) q.multipliers.push_back(Z4Poly::parse(s));
      r.construction = QCDescriptor{q.m, q.p, q.multipliers};
      code = build_qc(q);
    } else if (!a.cyclic_f.empty()) {
      const auto s = make_cyclic_spec(a.n, Z4Poly::parse(a.cyclic_f), Z4Poly::parse(a.cyclic_g), Z4Poly::parse(a.cyclic_h));
      r.construction = CyclicDescriptor{s.n, s.f, s.g, s.h};
      code = cyclic_code(s);
    } else if (!a.inverse_gray.empty()) {
      std::vector<BitVector> rows;
      std::istringstream in(a.inverse_gray);
      for (std::string tok; std::getline(in, tok, ',');)
        if (!strip_spaces(tok).empty()) rows.push_back(parse_bits(strip_spaces(tok)));
      if (rows.empty()) throw ParseError("empty binary matrix");
      const auto q = inverse_gray(binary_span(rows, rows.front().size(), {}));
      r.construction = InverseGrayDescriptor{rows.front().size(), rows};
      r.linear = q.linear == Linearity::linear;
      if (r.linear) {
        code.emplace(q.length, q.words);
      } else if (!a.k1 || !a.k2) {
        throw DomainError("inverse Gray image is nonlinear; give --k1 and --k2 explicitly");
      }
      r.n = q.length;
    } else {
      throw ParseError("db add needs one of --record, --matrix, --qc-p, --cyclic-f, --inverse-gray");
    }
    if (code) {
      r.n = code->length();
      r.k1 = code->k1();
      r.k2 = code->k2();
    }
    if (a.k1) r.k1 = *a.k1;
    if (a.k2) r.k2 = *a.k2;
    if (a.d) {
      r.d = *a.d;
    } else {
      const auto v = recompute(r, c.engine());
      if (!v.recomputed_d) throw DomainError("cannot compute d: " + v.reason);
      r.d = *v.recomputed_d;
    }
  }
  RecordStore db(store);
  const auto id = db.add(r);
  const auto s = db.get(id);
  if (c.json_out) emit(stored_json(*s));
  else print_stored(*s, c.binary_table());
  return 0;
}

int cmd_db_list(const Common& c, const std::vector<StoredRecord>& rs) {
  if (c.json_out) {
    for (const auto& s : rs) emit(stored_json(s));
  } else {
    for (const auto& s : rs) print_stored(s, c.binary_table());
    std::cout << rs.size() << " record(s)\n";
  }
  return 0;
}

int cmd_db_verify(const Common& c, const std::string& store, const std::string& id) {
  RecordStore db(store);
  const auto v = db.verify(id, c.engine());
  const auto s = db.get(id);
  if (c.json_out) {
    json j{{"id", id}, {"status", to_string(v.status)}, {"claimed_d", s->record.d}};
    if (v.recomputed_d) j["recomputed_d"] = *v.recomputed_d;
    if (!v.reason.empty()) j["reason"] = v.reason;
    emit(j);
  } else {
    std::cout << id << ": " << to_string(v.status) << " (claimed d=" << s->record.d;
    if (v.recomputed_d) std::cout << ", recomputed d=" << *v.recomputed_d;
    std::cout << ")" << (v.reason.empty() ? "" : " " + v.reason) << "\n";
  }
  return v.status == VerificationStatus::verified ? 0 : 1;
}

// ---- verify-paper-code -----------------------------------------------------

// Checkpoint file: one JSON object per line, {"chunks":N} first, then
// {"chunk":i,"hist":[...]} for every finished chunk.
struct Checkpoint {
  std::size_t chunks = 0;
  std::map<std::size_t, std::vector<std::uint64_t>> done;

  static Checkpoint load(const std::string& path, std::size_t chunks) {
    Checkpoint cp{chunks, {}};
    std::ifstream in(path);
    if (!in) return cp;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception&) {
        // a torn last line after an interrupted write is dropped
        if (in.peek() == EOF) break;
        throw ParseError("checkpoint line " + std::to_string(lineno) + " is not JSON");
      }
      if (j.contains("chunks")) {
        if (j["chunks"].get<std::size_t>() != chunks) throw DomainError("checkpoint was written with a different chunking");
      } else {
        cp.done[j.at("chunk").get<std::size_t>()] = j.at("hist").get<std::vector<std::uint64_t>>();
      }
    }
    return cp;
  }
};

int cmd_verify_paper_code(const Common& c, bool full, const std::string& checkpoint) {
  namespace ref = reference;
  json j;
  bool ok = true;
  auto check = [&](const std::string& key, bool v, const std::string& text) {
    j["checks"][key] = v;
    ok = ok && v;
    if (!c.json_out) std::cout << (v ? "ok    " : "FAIL  ") << text << "\n";
  };
  const auto g = Z4Poly::parse(ref::qc86_g), f = Z4Poly::parse(ref::qc86_f), h = Z4Poly::parse(ref::qc86_h);
  const auto spec = ref::qc86_cyclic_spec();
  const auto qc_spec = ref::qc86_spec();
  check("gfh", g * f * h == Z4Poly::x_n_minus_1(ref::qc86_m), "g f h = x^43 - 1 over Z4");
  check("p_is_3f", spec.p == 3 * f, "p = f h + 2 f = 3 f");
  check("free", spec.free, "p divides x^43 - 1 (free cyclic code)");
  const auto cyc = cyclic_code(spec);
  check("cyclic_type", cyc.k1() == 15 && cyc.k2() == 0, "cyclic code type " + type_string(43, cyc.k1(), cyc.k2()));
  const auto qc = build_qc(qc_spec);
  check("qc_type", qc.length() == 86 && qc.k1() == 15 && qc.k2() == 0,
        "QC code type " + type_string(qc.length(), qc.k1(), qc.k2()));
  const bool hyp = qc_bound_hypothesis(qc_spec);
  j["bound_hypothesis"] = hyp;
  const bool image_linear = gray_image_is_linear(qc);
  j["gray_image_linear"] = image_linear;
  if (!c.json_out) std::cout << "info  Gray image (172 bits, 2^30 words) is " << (image_linear ? "linear" : "nonlinear") << "\n";
  if (!c.json_out)
    std::cout << "info  coprimality hypothesis of the QC bound " << (hyp ? "holds" : "does not hold (gcd mod 2 is nontrivial)")
              << "\n";

  if (!full) {
    if (!c.json_out) std::cout << "(pass --full for the 4^15-codeword distance and enumerator verification)\n";
  } else {
    auto eo = c.engine();
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned dc = min_lee_distance(cyc, eo);
    check("cyclic_d", dc == ref::qc86_cyclic_distance, "cyclic code d_L = " + std::to_string(dc));

    const WeightEngine engine(qc);
    const std::size_t chunks = engine.chunk_count(eo);
    Checkpoint cp = checkpoint.empty() ? Checkpoint{chunks, {}} : Checkpoint::load(checkpoint, chunks);
    std::ofstream cp_out;
    if (!checkpoint.empty()) {
      const bool fresh = cp.done.empty();
      cp_out.open(checkpoint, fresh ? std::ios::trunc : std::ios::app);
      if (!cp_out) throw DomainError("cannot write checkpoint " + checkpoint);
      if (fresh) cp_out << json{{"chunks", chunks}}.dump() << "\n" << std::flush;
      std::clog << "checkpoint: " << cp.done.size() << "/" << chunks << " chunks already done\n";
    }
    std::vector<std::uint64_t> resumed;
    for (const auto& [i, hist] : cp.done) {
      if (resumed.size() < hist.size()) resumed.resize(hist.size());
      for (std::size_t w = 0; w < hist.size(); ++w) resumed[w] += hist[w];
    }
    std::size_t finished = cp.done.size();
    eo.skip_chunk = [&](std::size_t i) { return cp.done.count(i) > 0; };
    eo.chunk_done = [&](std::size_t i, const std::vector<std::uint64_t>& hist) {
      ++finished;
      if (cp_out.is_open()) cp_out << json{{"chunk", i}, {"hist", hist}}.dump() << "\n" << std::flush;
      if (finished % std::max<std::size_t>(1, chunks / 20) == 0 || finished == chunks) {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::clog << "progress " << finished << "/" << chunks << " chunks, " << std::fixed << std::setprecision(1) << s
                  << " s\n";
      }
    };
    auto hist = engine.histogram(Metric::lee, eo);
    if (hist.size() < resumed.size()) hist.resize(resumed.size());
    for (std::size_t w = 0; w < resumed.size(); ++w) hist[w] += resumed[w];
    WeightEnumerator e{Metric::lee, {}};
    for (std::size_t w = 0; w < hist.size(); ++w)
      if (hist[w]) e.counts[static_cast<unsigned>(w)] = hist[w];

    const unsigned dq = e.min_nonzero_weight().value_or(0);
    check("qc_d", dq == ref::qc86_distance, "QC code d_L = " + std::to_string(dq));
    check("total", e.total() == (std::uint64_t{1} << 30), "enumerator total = " + std::to_string(e.total()) + " = 4^15");
    check("bound", 2 * dc <= dq, "2 * " + std::to_string(dc) + " <= " + std::to_string(dq));
    j["enumerator"] = format_enumerator(e);

    const auto printed = parse_enumerator(ref::qc86_enumerator);
    std::set<unsigned> weights;
    for (const auto& [w, n] : e.counts) weights.insert(w);
    for (const auto& [w, n] : printed.counts) weights.insert(w);
    j["mismatches"] = json::array();
    for (auto w : weights) {
      const auto a = e.counts.count(w) ? e.counts.at(w) : 0, b = printed.counts.count(w) ? printed.counts.at(w) : 0;
      if (a == b) continue;
      j["mismatches"].push_back(json{{"weight", w}, {"computed", a}, {"published", b}});
      if (!c.json_out) std::cout << "diff  weight " << w << ": computed " << a << ", published " << b << "\n";
    }
    if (!c.json_out)
      std::cout << "info  " << (weights.size() - j["mismatches"].size()) << " of " << weights.size()
                << " enumerator entries agree with the published list\n";
  }
  j["ok"] = ok;
  if (c.json_out) emit(j);
  return ok ? 0 : 1;
}

// Logs global options and those of the selected subcommand chain.
void log_config(const CLI::App& app) {
  std::string prefix;
  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    prefix += a->get_name() + ".";
  }
  std::istringstream cfg(app.config_to_str(true, false));
  std::clog << "# resolved configuration\n";
  for (std::string line; std::getline(cfg, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto key = line.substr(0, eq);
    const auto dot = key.rfind('.');
    if (dot == std::string::npos || prefix.compare(0, dot + 1, key, 0, dot + 1) == 0) std::clog << "#   " << line << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"z4codes: linear codes over Z4"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Common c;
  app.add_flag("--json", c.json_out, "machine-readable output");
  app.add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--table", c.table, "best-known binary code table");

  std::function<int()> action;

  std::size_t n = 0;
  auto* factor = app.add_subcommand("factor", "factor x^n - 1 over Z2 and lift to Z4");
  factor->add_option("n", n, "odd length")->required();
  factor->callback([&] { action = [&] { return cmd_factor(c, n); }; });

  bool with_d = false;
  auto* cyc = app.add_subcommand("cyclic-enum", "list all cyclic codes of odd length n");
  cyc->add_option("n", n, "odd length")->required();
  cyc->add_flag("--distance", with_d, "also compute the minimum Lee distance");
  cyc->callback([&] { action = [&] { return cmd_cyclic_enum(c, n, with_d); }; });

  std::size_t m = 0;
  std::string p;
  std::vector<std::string> mult;
  bool want_enum = false, show_matrix = false;
  auto* qcb = app.add_subcommand("qc-build", "build a 1-generator QC code (p, p f1, ..., p f_{l-1})");
  qcb->add_option("--m", m, "block length")->required();
  qcb->add_option("--p", p, "generator polynomial")->required();
  qcb->add_option("--mult", mult, "multiplier polynomials f_i (repeatable)");
  qcb->add_flag("--enumerator", want_enum, "compute the full Lee weight enumerator");
  qcb->add_flag("--matrix", show_matrix, "print the generator matrix");
  qcb->callback([&] { action = [&] { return cmd_qc_build(c, m, p, mult, want_enum, show_matrix); }; });

  QCSearchOptions qso;
  bool random = false;
  auto* qcs = app.add_subcommand("qc-search", "search QC codes over all cyclic codes of length m");
  qcs->add_option("--m", qso.m, "block length")->required();
  qcs->add_option("--l", qso.blocks, "number of blocks");
  qcs->add_flag("--random", random, "draw multipliers at random instead of exhaustively");
  qcs->add_option("--budget", qso.budget, "multiplier tuples per cyclic code");
  qcs->add_flag("--all", qso.emit_all, "print every candidate, not only improvements");
  qcs->callback([&] { action = [&] { return cmd_qc_search(c, qso, random); }; });

  GcsOptions go;
  bool subseq = false;
  std::string gcs_store;
  unsigned target = 0;
  auto* g = app.add_subcommand("gcs", "generator-matrix search");
  g->add_option("--n", go.length, "code length N")->required();
  g->add_option("--k", go.dimension, "number of free generators K")->required();
  g->add_option("--t", go.budget, "initial mutation budget T")->required();
  g->add_option("--k2", go.k2, "order-2 generators (only 0 is supported)");
  auto* target_opt = g->add_option("--target", target, "target distance (default: from the binary table)");
  g->add_flag("--subsequences", subseq, "use C(3,t) shift subsequences instead of all 3^t tuples");
  g->add_flag("--randomize", go.randomize, "shuffle position subsets with --seed");
  g->add_option("--store", gcs_store, "append the result to this record store");
  g->callback([&] {
    if (target_opt->count()) go.target = target;
    action = [&] { return cmd_gcs(c, go, subseq, gcs_store); };
  });

  std::string word;
  auto* gray = app.add_subcommand("gray", "Gray image of a Z4 word");
  gray->add_option("word", word, "Z4 digits, e.g. 2013")->required();
  gray->callback([&] { action = [&] { return cmd_gray(c, word); }; });
  auto* ungray = app.add_subcommand("ungray", "inverse Gray image of a bit string");
  ungray->add_option("bits", word, "bits, pairs may be space separated")->required();
  ungray->callback([&] { action = [&] { return cmd_ungray(c, word); }; });

  std::string matrix, metric = "lee";
  auto* dist = app.add_subcommand("dist", "minimum distance of the code spanned by a matrix");
  dist->add_option("--matrix", matrix, "rows of Z4 digits separated by ',' or ';'")->required();
  dist->add_option("--metric", metric, "lee, hamming, euclidean or all");
  dist->add_flag("--enumerator", want_enum, "also print the weight enumerator");
  dist->callback([&] { action = [&] { return cmd_dist(c, matrix, metric, want_enum); }; });

  std::string store, id;
  auto* db = app.add_subcommand("db", "record store");
  db->require_subcommand(1);
  db->add_option("--store", store, "record file")->required();

  DbAddArgs add;
  auto* db_add = db->add_subcommand("add", "append a record (d and type are computed when omitted)");
  db_add->add_option("--record", add.record_line, "a complete record as one JSON line");
  db_add->add_option("--matrix", add.matrix, "generator matrix");
  db_add->add_flag("--gcs", add.gcs, "mark a matrix as found by gcs");
  db_add->add_option("--qc-p", add.qc_p, "QC generator p (needs --n as block length)");
  db_add->add_option("--mult", add.mult, "QC multipliers");
  db_add->add_option("--cyclic-f", add.cyclic_f, "cyclic f (with --cyclic-g, --cyclic-h, --n)");
  db_add->add_option("--cyclic-g", add.cyclic_g);
  db_add->add_option("--cyclic-h", add.cyclic_h);
  db_add->add_option("--inverse-gray", add.inverse_gray, "binary generator rows separated by ','");
  db_add->add_option("--n", add.n, "block length for --qc-p / --cyclic-f");
  db_add->add_option("--k1", add.k1);
  db_add->add_option("--k2", add.k2);
  db_add->add_option("--d", add.d, "claimed distance");
  db_add->add_option("--metric", add.metric, "lee, hamming or euclidean");
  db_add->add_option("--source", add.source, "provenance note");
  db_add->callback([&] { action = [&] { return cmd_db_add(c, store, add); }; });

  RecordFilter filter;
  std::string cls_name, metric_filter;
  auto* db_query = db->add_subcommand("query", "list records");
  db_query->add_option("--n", filter.n);
  db_query->add_option("--k1", filter.k1);
  db_query->add_option("--k2", filter.k2);
  db_query->add_option("--metric", metric_filter);
  db_query->add_option("--class", cls_name, "good, decent, other or unclassified");
  db_query->add_flag("--best", filter.best_only, "only the best record per parameter set");
  db_query->callback([&] {
    action = [&] {
      if (!metric_filter.empty()) filter.metric = parse_metric(metric_filter);
      if (!cls_name.empty()) filter.classification = parse_classification(cls_name);
      return cmd_db_list(c, RecordStore(store).query(filter, &c.binary_table()));
    };
  });

  std::size_t hk1 = 0, hk2 = 0;
  std::string hmetric = "lee";
  auto* db_hist = db->add_subcommand("history", "all records for one parameter set, oldest first");
  db_hist->add_option("--n", n)->required();
  db_hist->add_option("--k1", hk1)->required();
  db_hist->add_option("--k2", hk2);
  db_hist->add_option("--metric", hmetric);
  db_hist->callback(
      [&] { action = [&] { return cmd_db_list(c, RecordStore(store).history(n, hk1, hk2, parse_metric(hmetric))); }; });

  auto* db_verify = db->add_subcommand("verify", "recompute a record and append its verification status");
  db_verify->add_option("id", id)->required();
  db_verify->callback([&] { action = [&] { return cmd_db_verify(c, store, id); }; });

  bool full = false;
  std::string checkpoint;
  auto* vpc = app.add_subcommand("verify-paper-code", "rebuild and check the [86, 4^15, 55] QC code");
  vpc->add_flag("--full", full, "run the 4^15-codeword enumeration");
  vpc->add_option("--checkpoint", checkpoint, "resumable checkpoint file for --full");
  vpc->callback([&] { action = [&] { return cmd_verify_paper_code(c, full, checkpoint); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  log_config(app);
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
