#ifndef Z4CODES_BINARY_TABLE_HPP
#define Z4CODES_BINARY_TABLE_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"

namespace z4 {

struct BinaryTableEntry {
  std::size_t length = 0;
  std::size_t dimension = 0;
  unsigned distance = 0;
  std::string provenance;
};

/// Best-known minimum distances of binary linear [length, dimension] codes.
///
/// File format: one entry per line, "length dimension distance provenance",
/// whitespace separated; '#' starts a comment. The provenance is the rest of
/// the line.
class BinaryRecordTable {
public:
  using Key = std::pair<std::size_t, std::size_t>;

  std::optional<unsigned> distance(std::size_t length, std::size_t dimension) const {
    auto it = entries_.find({length, dimension});
    if (it == entries_.end()) return std::nullopt;
    return it->second.distance;
  }

  const BinaryTableEntry* find(std::size_t length, std::size_t dimension) const {
    auto it = entries_.find({length, dimension});
    return it == entries_.end() ? nullptr : &it->second;
  }

  void insert(BinaryTableEntry e) {
    if (e.dimension < 1 || e.length < e.dimension) throw DomainError("table entry needs length >= dimension >= 1");
    if (e.distance < 1 || e.distance > e.length) throw DomainError("table entry distance out of range");
    Key key{e.length, e.dimension};
    if (!entries_.emplace(key, std::move(e)).second) throw DomainError("duplicate table entry");
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<Key, BinaryTableEntry>& entries() const noexcept { return entries_; }

  /// Soft consistency checks: d(n,k) >= d(n,k+1) and d(n+1,k) >= d(n,k).
  std::vector<std::string> monotonicity_warnings() const {
    std::vector<std::string> w;
    for (const auto& [key, e] : entries_) {
      const auto [n, k] = key;
      if (auto next = distance(n, k + 1); next && *next > e.distance)
        w.push_back("d(" + std::to_string(n) + "," + std::to_string(k + 1) + ")=" + std::to_string(*next) +
                    " exceeds d(" + std::to_string(n) + "," + std::to_string(k) + ")=" + std::to_string(e.distance));
      if (auto longer = distance(n + 1, k); longer && *longer < e.distance)
        w.push_back("d(" + std::to_string(n + 1) + "," + std::to_string(k) + ")=" + std::to_string(*longer) +
                    " is below d(" + std::to_string(n) + "," + std::to_string(k) + ")=" + std::to_string(e.distance));
    }
    return w;
  }

  static BinaryRecordTable parse(std::istream& in) {
    BinaryRecordTable t;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      long long n = 0, k = 0, d = 0;
      if (!(ls >> n)) {
        if (ls.eof() && line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected 'length dimension distance provenance'", lineno);
      }
      if (!(ls >> k >> d)) throw ParseError("expected 'length dimension distance provenance'", lineno);
      std::string prov;
      std::getline(ls >> std::ws, prov);
      while (!prov.empty() && (prov.back() == ' ' || prov.back() == '\t' || prov.back() == '\r')) prov.pop_back();
      if (prov.empty()) throw ParseError("missing provenance", lineno);
      if (n < 1 || k < 1 || d < 1) throw ParseError("values must be positive", lineno);
      try {
        t.insert({static_cast<std::size_t>(n), static_cast<std::size_t>(k), static_cast<unsigned>(d), prov});
      } catch (const DomainError& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    t.warnings_ = t.monotonicity_warnings();
    return t;
  }

  static BinaryRecordTable parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
  }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::string serialize() const {
    std::string out;
    for (const auto& [key, e] : entries_)
      out += std::to_string(e.length) + ' ' + std::to_string(e.dimension) + ' ' + std::to_string(e.distance) + ' ' +
             e.provenance + '\n';
    return out;
  }

private:
  std::map<Key, BinaryTableEntry> entries_;
  std::vector<std::string> warnings_;
};

inline BinaryRecordTable ingest_binary_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open binary table " + path.string());
  return BinaryRecordTable::parse(in);
}

enum class Classification { good, decent, other, unclassified };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::good: return "good";
    case Classification::decent: return "decent";
    case Classification::other: return "other";
    case Classification::unclassified: return "unclassified";
  }
  return "?";
}

inline Classification parse_classification(std::string_view s) {
  for (auto c : {Classification::good, Classification::decent, Classification::other, Classification::unclassified})
    if (to_string(c) == s) return c;
  throw ParseError("unknown classification '" + std::string(s) + "'");
}

struct ClassifyResult {
  Classification value = Classification::unclassified;
  std::optional<unsigned> reference;  // d' from the table
  std::string reason;
};

/// Compares a Lee-metric [n, 4^k1 2^k2, d] code with the best binary linear
/// code of length 2n and dimension 2 k1 + k2: good if d > d', decent if
/// d == d', other if d < d'.
inline ClassifyResult classify(std::size_t n, std::size_t k1, std::size_t k2, Metric metric, unsigned d,
                               const BinaryRecordTable& table) {
  if (metric != Metric::lee) return {Classification::unclassified, std::nullopt, "only Lee-metric codes are classified"};
  const auto ref = table.distance(2 * n, 2 * k1 + k2);
  if (!ref)
    return {Classification::unclassified, std::nullopt,
            "no binary table entry for (" + std::to_string(2 * n) + ", " + std::to_string(2 * k1 + k2) + ")"};
  const auto c = d > *ref ? Classification::good : d == *ref ? Classification::decent : Classification::other;
  return {c, ref, {}};
}

} // namespace z4

#endif // Z4CODES_BINARY_TABLE_HPP
