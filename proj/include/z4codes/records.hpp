#ifndef Z4CODES_RECORDS_HPP
#define Z4CODES_RECORDS_HPP

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <json.hpp>

#include "binary_table.hpp"
#include "codes.hpp"
#include "construct.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "gray.hpp"
#include "poly.hpp"

namespace z4 {

// Construction descriptors. Each carries enough data to rebuild the code.

struct CyclicDescriptor {
  std::size_t n = 0;
  Z4Poly f, g, h;
};

struct QCDescriptor {
  std::size_t m = 0;
  Z4Poly p;
  std::vector<Z4Poly> multipliers;
};

struct MatrixDescriptor {
  bool from_gcs = false;  // "gcs-matrix" vs "raw-matrix"
  std::size_t n = 0;
  Z4Matrix rows;
};

/// Quaternary set obtained as the inverse Gray image of a binary linear
/// code given by its generator rows (length 2n).
struct InverseGrayDescriptor {
  std::size_t binary_length = 0;
  std::vector<BitVector> rows;
};

using Construction = std::variant<CyclicDescriptor, QCDescriptor, MatrixDescriptor, InverseGrayDescriptor>;

inline std::string construction_kind(const Construction& c) {
  struct {
    std::string operator()(const CyclicDescriptor&) const { return "cyclic"; }
    std::string operator()(const QCDescriptor&) const { return "qc"; }
    std::string operator()(const MatrixDescriptor& m) const { return m.from_gcs ? "gcs-matrix" : "raw-matrix"; }
    std::string operator()(const InverseGrayDescriptor&) const { return "inverse-gray"; }
  } v;
  return std::visit(v, c);
}

enum class VerificationStatus { unverified, verified, disputed, unverifiable };

inline std::string_view to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::unverified: return "unverified";
    case VerificationStatus::verified: return "verified";
    case VerificationStatus::disputed: return "disputed";
    case VerificationStatus::unverifiable: return "unverifiable";
  }
  return "?";
}

inline VerificationStatus parse_verification_status(std::string_view s) {
  for (auto v : {VerificationStatus::unverified, VerificationStatus::verified, VerificationStatus::disputed,
                 VerificationStatus::unverifiable})
    if (to_string(v) == s) return v;
  throw ParseError("unknown verification status '" + std::string(s) + "'");
}

struct CodeRecord {
  std::string id;
  std::size_t n = 0, k1 = 0, k2 = 0;
  Metric metric = Metric::lee;
  unsigned d = 0;
  Construction construction;
  bool linear = true;
  std::string source;
  std::string created_at;
};

/// A record as read back from the store, with its effective verification
/// state (latest status event) and the exact line it was stored as.
struct StoredRecord {
  CodeRecord record;
  VerificationStatus status = VerificationStatus::unverified;
  std::string status_at;
  std::optional<unsigned> recomputed_d;
  std::string line;
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(now);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(now - secs).count();
  const std::time_t t = std::chrono::system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<long long>(micros));
  return buf;
}

namespace detail {

using nlohmann::ordered_json;

inline std::vector<std::string> poly_strings(const std::vector<Z4Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline ordered_json construction_to_json(const Construction& c) {
  ordered_json j;
  j["kind"] = construction_kind(c);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicDescriptor>) {
          j["n"] = d.n;
          j["f"] = d.f.to_string();
          j["g"] = d.g.to_string();
          j["h"] = d.h.to_string();
        } else if constexpr (std::is_same_v<T, QCDescriptor>) {
          j["m"] = d.m;
          j["p"] = d.p.to_string();
          j["multipliers"] = poly_strings(d.multipliers);
        } else if constexpr (std::is_same_v<T, MatrixDescriptor>) {
          j["n"] = d.n;
          std::vector<std::string> rows;
          for (const auto& r : d.rows) rows.push_back(format_z4_vector(r));
          j["rows"] = rows;
        } else {
          j["length"] = d.binary_length;
          std::vector<std::string> rows;
          for (const auto& r : d.rows) rows.push_back(format_bits(r));
          j["rows"] = rows;
        }
      },
      c);
  return j;
}

template <typename T>
T required(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

inline Construction construction_from_json(const ordered_json& j) {
  const auto kind = required<std::string>(j, "kind");
  if (kind == "cyclic") {
    return CyclicDescriptor{required<std::size_t>(j, "n"), Z4Poly::parse(required<std::string>(j, "f")),
                            Z4Poly::parse(required<std::string>(j, "g")), Z4Poly::parse(required<std::string>(j, "h"))};
  }
  if (kind == "qc") {
    QCDescriptor d{required<std::size_t>(j, "m"), Z4Poly::parse(required<std::string>(j, "p")), {}};
    for (const auto& s : required<std::vector<std::string>>(j, "multipliers")) d.multipliers.push_back(Z4Poly::parse(s));
    return d;
  }
  if (kind == "gcs-matrix" || kind == "raw-matrix") {
    MatrixDescriptor d{kind == "gcs-matrix", required<std::size_t>(j, "n"), {}};
    for (const auto& s : required<std::vector<std::string>>(j, "rows")) {
      d.rows.push_back(parse_z4_vector(s));
      if (d.rows.back().size() != d.n) throw ParseError("matrix row length differs from n");
    }
    return d;
  }
  if (kind == "inverse-gray") {
    InverseGrayDescriptor d{required<std::size_t>(j, "length"), {}};
    for (const auto& s : required<std::vector<std::string>>(j, "rows")) {
      d.rows.push_back(parse_bits(s));
      if (d.rows.back().size() != d.binary_length) throw ParseError("binary row length differs from length");
    }
    return d;
  }
  throw ParseError("unknown construction kind '" + kind + "'");
}

} // namespace detail

/// Canonical one-line serialization of a record.
inline std::string serialize_record(const CodeRecord& r) {
  detail::ordered_json j;
  j["type"] = "record";
  j["id"] = r.id;
  j["n"] = r.n;
  j["k1"] = r.k1;
  j["k2"] = r.k2;
  j["metric"] = std::string(to_string(r.metric));
  j["d"] = r.d;
  j["linear"] = r.linear;
  j["construction"] = detail::construction_to_json(r.construction);
  j["source"] = r.source;
  j["created_at"] = r.created_at;
  return j.dump();
}

inline CodeRecord parse_record_json(const detail::ordered_json& j) {
  CodeRecord r;
  r.id = detail::required<std::string>(j, "id");
  if (r.id.empty()) throw ParseError("empty record id");
  r.n = detail::required<std::size_t>(j, "n");
  r.k1 = detail::required<std::size_t>(j, "k1");
  r.k2 = detail::required<std::size_t>(j, "k2");
  r.metric = parse_metric(detail::required<std::string>(j, "metric"));
  r.d = detail::required<unsigned>(j, "d");
  r.linear = detail::required<bool>(j, "linear");
  if (!j.contains("construction")) throw ParseError("missing field 'construction'");
  r.construction = detail::construction_from_json(j.at("construction"));
  r.source = j.value("source", "");
  r.created_at = j.value("created_at", "");
  return r;
}

inline CodeRecord parse_record(std::string_view line) {
  detail::ordered_json j;
  try {
    j = detail::ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
  return parse_record_json(j);
}

/// Rebuilt code plus the distance recomputed under the record's metric.
struct VerificationResult {
  VerificationStatus status = VerificationStatus::unverified;
  std::optional<unsigned> recomputed_d;
  std::string reason;
};

/// Rebuilds the code from its descriptor and recomputes (n, k1, k2, d).
/// Does not touch any store.
inline VerificationResult recompute(const CodeRecord& rec, const EngineOptions& opt = {},
                                    std::size_t pairwise_limit = 4096) {
  auto check = [&](std::size_t n, std::size_t k1, std::size_t k2, unsigned d) {
    VerificationResult v{VerificationStatus::verified, d, {}};
    std::string why;
    if (n != rec.n) why += "length " + std::to_string(n) + " != " + std::to_string(rec.n) + "; ";
    if (2 * k1 + k2 != 2 * rec.k1 + rec.k2 || (rec.linear && (k1 != rec.k1 || k2 != rec.k2)))
      why += "type (" + std::to_string(k1) + "," + std::to_string(k2) + ") != (" + std::to_string(rec.k1) + "," +
             std::to_string(rec.k2) + "); ";
    if (d != rec.d) why += "distance " + std::to_string(d) + " != claimed " + std::to_string(rec.d) + "; ";
    if (!why.empty()) {
      v.status = VerificationStatus::disputed;
      why.resize(why.size() - 2);
      v.reason = why;
    }
    return v;
  };
  auto linear_code = [&](const Z4LinearCode& code) -> VerificationResult {
    if (code.is_zero()) return {VerificationStatus::unverifiable, std::nullopt, "descriptor yields the zero code"};
    return check(code.length(), code.k1(), code.k2(), min_distance(code, rec.metric, opt));
  };

  try {
    if (const auto* c = std::get_if<CyclicDescriptor>(&rec.construction)) {
      return linear_code(cyclic_code(make_cyclic_spec(c->n, c->f, c->g, c->h)));
    }
    if (const auto* q = std::get_if<QCDescriptor>(&rec.construction)) {
      return linear_code(build_qc(QCSpec{q->m, q->p, q->multipliers}));
    }
    if (const auto* m = std::get_if<MatrixDescriptor>(&rec.construction)) {
      if (m->rows.empty()) return {VerificationStatus::unverifiable, std::nullopt, "matrix descriptor has no rows"};
      return linear_code(Z4LinearCode(m->n, m->rows));
    }
    const auto& ig = std::get<InverseGrayDescriptor>(rec.construction);
    if (ig.rows.empty()) return {VerificationStatus::unverifiable, std::nullopt, "binary generator has no rows"};
    const auto binary = binary_span(ig.rows, ig.binary_length);
    if (binary.words.size() < 2) return {VerificationStatus::unverifiable, std::nullopt, "descriptor yields the zero code"};
    const auto quaternary = inverse_gray(binary);
    std::size_t log2 = 0;
    while ((std::size_t{1} << log2) < quaternary.words.size()) ++log2;
    // split 2^log2 as 4^k1 2^k2 with k2 in {0,1} for nonlinear sets
    std::size_t k1 = log2 / 2, k2 = log2 % 2;
    if (quaternary.linear == Linearity::linear) {
      const Z4LinearCode span(quaternary.length, quaternary.words);
      k1 = span.k1();
      k2 = span.k2();
    }
    unsigned d = 0;
    if (rec.metric == Metric::lee) {
      // Gray map is an isometry
      if (binary.linear == Linearity::linear) {
        d = ~0U;
        for (const auto& w : binary.words) {
          const auto wt = static_cast<unsigned>(std::count(w.begin(), w.end(), 1));
          if (wt) d = std::min(d, wt);
        }
      } else {
        d = min_pairwise_distance(binary);
      }
    } else {
      if (quaternary.words.size() > pairwise_limit)
        return {VerificationStatus::unverifiable, std::nullopt, "set too large for pairwise distance"};
      d = min_pairwise_distance(quaternary, rec.metric);
    }
    return check(quaternary.length, k1, k2, d);
  } catch (const DomainError& e) {
    return {VerificationStatus::unverifiable, std::nullopt, e.what()};
  }
}

struct RecordFilter {
  std::optional<std::size_t> n, k1, k2;
  std::optional<Metric> metric;
  std::optional<Classification> classification;
  bool best_only = false;
};

/// Append-only file-backed store of code records.
///
/// The file starts with a schema header line; every following line is a JSON
/// object, either a record ("type":"record") or a verification event
/// ("type":"status") referring to a record id. Lines are never rewritten:
/// improvements are new records, and verification appends a status event.
/// Appends happen under an exclusive flock; readers take a shared lock and
/// see a consistent prefix.
class RecordStore {
public:
  static constexpr std::string_view header = "#z4codes-records schema=1";

  explicit RecordStore(std::filesystem::path path, std::function<std::string()> clock = utc_timestamp)
      : path_(std::move(path)), clock_(std::move(clock)) {
    if (!std::filesystem::exists(path_)) {
      Locked lock(path_, LOCK_EX);
      if (std::filesystem::file_size(path_) == 0) lock.write(std::string(header) + '\n');
    }
  }

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Appends a record and returns its id. An empty id is replaced by the next
  /// free "R%06d" token; an empty created_at is filled from the clock.
  std::string add(CodeRecord rec) {
    Locked lock(path_, LOCK_EX);
    const auto existing = parse_file(lock.read());
    std::map<std::string, bool> ids;
    for (const auto& r : existing.records) ids[r.record.id] = true;
    if (rec.id.empty()) {
      for (std::size_t seq = existing.records.size() + 1;; ++seq) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "R%06zu", seq);
        if (!ids.count(buf)) {
          rec.id = buf;
          break;
        }
      }
    } else if (ids.count(rec.id)) {
      throw DomainError("duplicate record id '" + rec.id + "'");
    }
    if (rec.created_at.empty()) rec.created_at = clock_();
    const auto line = serialize_record(rec);
    // descriptor must survive its own serialization
    if (serialize_record(parse_record(line)) != line) throw DomainError("record does not round-trip; refusing to store");
    lock.write(line + '\n');
    return rec.id;
  }

  std::vector<StoredRecord> all() const {
    Locked lock(path_, LOCK_SH);
    return parse_file(lock.read()).records;
  }

  std::optional<StoredRecord> get(std::string_view id) const {
    for (auto& r : all())
      if (r.record.id == id) return r;
    return std::nullopt;
  }

  /// Matching records sorted by (d desc, created_at asc). With best_only,
  /// one record (largest d) per (n, k1, k2, metric).
  std::vector<StoredRecord> query(const RecordFilter& f, const BinaryRecordTable* table = nullptr) const {
    std::vector<StoredRecord> out;
    for (auto& r : all()) {
      const auto& c = r.record;
      if (f.n && *f.n != c.n) continue;
      if (f.k1 && *f.k1 != c.k1) continue;
      if (f.k2 && *f.k2 != c.k2) continue;
      if (f.metric && *f.metric != c.metric) continue;
      if (f.classification) {
        const auto cls = table ? classify(c.n, c.k1, c.k2, c.metric, c.d, *table).value : Classification::unclassified;
        if (cls != *f.classification) continue;
      }
      out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const StoredRecord& a, const StoredRecord& b) {
      if (a.record.d != b.record.d) return a.record.d > b.record.d;
      return a.record.created_at < b.record.created_at;
    });
    if (f.best_only) {
      std::vector<StoredRecord> best;
      std::set<std::tuple<std::size_t, std::size_t, std::size_t, Metric>> seen;
      for (auto& r : out)
        if (seen.insert({r.record.n, r.record.k1, r.record.k2, r.record.metric}).second) best.push_back(std::move(r));
      out = std::move(best);
    }
    return out;
  }

  /// Every record ever stored for these parameters, in insertion order.
  std::vector<StoredRecord> history(std::size_t n, std::size_t k1, std::size_t k2, Metric metric) const {
    std::vector<StoredRecord> out;
    for (auto& r : all())
      if (r.record.n == n && r.record.k1 == k1 && r.record.k2 == k2 && r.record.metric == metric)
        out.push_back(std::move(r));
    return out;
  }

  /// Recomputes the record's distance from its construction and appends the
  /// outcome (verified or disputed). An unverifiable descriptor leaves the
  /// stored status unchanged; the reason is returned.
  VerificationResult verify(std::string_view id, const EngineOptions& opt = {}) {
    const auto rec = get(id);
    if (!rec) throw DomainError("no record with id '" + std::string(id) + "'");
    auto result = recompute(rec->record, opt);
    if (result.status == VerificationStatus::unverifiable) return result;
    detail::ordered_json j;
    j["type"] = "status";
    j["id"] = rec->record.id;
    j["status"] = std::string(to_string(result.status));
    if (result.recomputed_d) j["recomputed_d"] = *result.recomputed_d;
    j["reason"] = result.reason;
    j["at"] = clock_();
    Locked lock(path_, LOCK_EX);
    lock.write(j.dump() + '\n');
    return result;
  }

private:
  struct Parsed {
    std::vector<StoredRecord> records;
  };

  static Parsed parse_file(const std::string& text) {
    Parsed p;
    std::map<std::string, std::size_t> index;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (lineno == 1) {
        if (line != header) throw ParseError("missing or unsupported schema header", lineno);
        continue;
      }
      if (line.empty()) continue;
      try {
        const auto j = detail::ordered_json::parse(line);
        const auto type = detail::required<std::string>(j, "type");
        if (type == "record") {
          StoredRecord s;
          s.record = parse_record_json(j);
          s.line = line;
          if (index.count(s.record.id)) throw ParseError("duplicate record id '" + s.record.id + "'");
          index[s.record.id] = p.records.size();
          p.records.push_back(std::move(s));
        } else if (type == "status") {
          const auto id = detail::required<std::string>(j, "id");
          auto it = index.find(id);
          if (it == index.end()) throw ParseError("status event for unknown record '" + id + "'");
          auto& s = p.records[it->second];
          s.status = parse_verification_status(detail::required<std::string>(j, "status"));
          s.status_at = j.value("at", "");
          s.recomputed_d = j.contains("recomputed_d") ? std::optional<unsigned>(j["recomputed_d"].get<unsigned>())
                                                      : std::nullopt;
        } else {
          throw ParseError("unknown line type '" + type + "'");
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed line: ") + e.what(), lineno);
      } catch (const ParseError& e) {
        if (e.line()) throw;
        throw ParseError(e.what(), lineno);
      }
    }
    return p;
  }

  // RAII flock on the store file.
  class Locked {
  public:
    Locked(const std::filesystem::path& p, int mode) {
      fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_APPEND, 0644);
      if (fd_ < 0) throw DomainError("cannot open record store " + p.string());
      if (::flock(fd_, mode) != 0) {
        ::close(fd_);
        throw DomainError("cannot lock record store " + p.string());
      }
    }
    ~Locked() {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
    Locked(const Locked&) = delete;
    Locked& operator=(const Locked&) = delete;

    std::string read() const {
      std::string out;
      char buf[1 << 16];
      ::lseek(fd_, 0, SEEK_SET);
      for (;;) {
        const auto got = ::read(fd_, buf, sizeof buf);
        if (got < 0) throw DomainError("read error on record store");
        if (got == 0) break;
        out.append(buf, static_cast<std::size_t>(got));
      }
      return out;
    }

    void write(const std::string& s) {
      std::size_t done = 0;
      while (done < s.size()) {
        const auto put = ::write(fd_, s.data() + done, s.size() - done);
        if (put < 0) throw DomainError("write error on record store");
        done += static_cast<std::size_t>(put);
      }
    }

  private:
    int fd_ = -1;
  };

  std::filesystem::path path_;
  std::function<std::string()> clock_;
};

} // namespace z4

#endif // Z4CODES_RECORDS_HPP
