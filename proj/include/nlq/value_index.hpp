#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlq/error.hpp"
#include "nlq/mini_rdb.hpp"
#include "nlq/schema_graph.hpp"
#include "nlq/strings.hpp"

namespace nlq {

struct ValueEntry {
  std::string value;  // as first seen in the data
  std::string attribute;
  std::string table;
  friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

inline constexpr std::size_t kDefaultValueIndexCap = 1'000'000;

/// Maps a normalized data value ("fast food") to the column it occurs in.
/// Keys are lowercased with whitespace collapsed; they are not lemmatized.
class ValueIndex {
 public:
  /// Indexes every distinct value of the configured text columns. When a key
  /// shows up in two columns the earlier column in config order keeps it and
  /// the clash is recorded in warnings().
  static ValueIndex build(const Database& db, const std::vector<ValueColumnConfig>& columns,
                          std::size_t max_keys = kDefaultValueIndexCap) {
    ValueIndex index;
    for (const auto& vc : columns) {
      const Table* t = db.find(vc.table);
      if (!t) throw Error(ErrorCode::kConfigError, "value index: unknown table '" + vc.table + "'");
      auto col = t->column_index(vc.column);
      if (!col) {
        throw Error(ErrorCode::kConfigError,
                    "value index: unknown column '" + vc.table + "." + vc.column + "'");
      }
      if (t->columns[*col].type != ColumnType::kText) {
        throw Error(ErrorCode::kConfigError,
                    "value index: column '" + vc.table + "." + vc.column + "' is not text");
      }
      for (const auto& row : t->rows) {
        const auto& raw = std::get<std::string>(row[*col]);
        std::string key = normalize_phrase(raw);
        if (key.empty()) continue;
        auto [it, inserted] = index.entries_.try_emplace(key, ValueEntry{raw, vc.column, vc.table});
        if (!inserted && (it->second.table != vc.table || it->second.attribute != vc.column) &&
            index.collided_.emplace(key, vc.table + "." + vc.column).second) {
          index.warnings_.push_back("value '" + key + "' occurs in " + it->second.table + "." +
                                    it->second.attribute + " and " + vc.table + "." + vc.column +
                                    "; keeping " + it->second.table + "." + it->second.attribute);
        }
        if (index.entries_.size() > max_keys) {
          throw Error(ErrorCode::kConfigError,
                      "value index exceeds " + std::to_string(max_keys) + " keys");
        }
      }
    }
    return index;
  }

  /// Joins the words with single spaces and lowercases before lookup.
  std::optional<ValueEntry> lookup(const std::vector<std::string>& phrase) const {
    auto it = entries_.find(normalize_phrase(join(phrase, " ")));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// (key, losing table.column) for every cross-column clash.
  const std::set<std::pair<std::string, std::string>>& collisions() const { return collided_; }
  const std::unordered_map<std::string, ValueEntry>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, ValueEntry> entries_;
  std::set<std::pair<std::string, std::string>> collided_;
  std::vector<std::string> warnings_;
};

inline ValueIndex build_value_index(const Database& db,
                                    const std::vector<ValueColumnConfig>& columns) {
  return ValueIndex::build(db, columns);
}

inline std::optional<ValueEntry> lookup_value(const ValueIndex& index,
                                              const std::vector<std::string>& phrase) {
  return index.lookup(phrase);
}

}  // namespace nlq
