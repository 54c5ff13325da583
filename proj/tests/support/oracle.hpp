#pragma once

// Brute-force reference evaluator for the SQL dialect. It shares no code path
// with the engine's executor: it enumerates the full cross product of the
// input tables, keeps combinations where every same-named column agrees,
// applies the predicates, projects, and de-duplicates through a sorted set.

#include <cstddef>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nlq/mini_rdb.hpp"

namespace nlq::testing {

inline std::string oracle_text(const Value& v) {
  if (auto s = std::get_if<std::string>(&v)) return *s;
  if (auto i = std::get_if<std::int64_t>(&v)) {
    std::ostringstream os;
    os << *i;
    return os.str();
  }
  return stringify(v);  // shortest round-trip form is the agreed display of reals
}

inline std::string oracle_lower(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return s;
}

inline bool oracle_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

using OracleRows = std::set<std::vector<std::string>>;

inline OracleRows brute_force_execute(const SqlQuery& q, const Database& db) {
  std::vector<const Table*> tables;
  for (const auto& name : q.tables) tables.push_back(db.find(name));

  struct Slot {
    std::size_t table;
    std::size_t column;
  };
  std::vector<std::string> names;
  std::vector<Slot> slots;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (std::size_t c = 0; c < tables[t]->columns.size(); ++c) {
      names.push_back(tables[t]->columns[c].name);
      slots.push_back({t, c});
    }
  }
  auto first_slot = [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    return names.size();
  };

  OracleRows out;
  std::vector<std::size_t> pick(tables.size(), 0);
  for (const auto* t : tables) {
    if (t->rows.empty()) return out;
  }
  while (true) {
    auto cell = [&](std::size_t slot) -> const Value& {
      return tables[slots[slot].table]->rows[pick[slots[slot].table]][slots[slot].column];
    };
    bool ok = true;
    for (std::size_t i = 0; ok && i < names.size(); ++i) {
      for (std::size_t k = i + 1; ok && k < names.size(); ++k) {
        if (names[i] == names[k] && oracle_text(cell(i)) != oracle_text(cell(k))) ok = false;
      }
    }
    for (std::size_t p = 0; ok && p < q.predicates.size(); ++p) {
      const auto& pred = q.predicates[p];
      std::size_t s = first_slot(pred.column);
      const Value& v = cell(s);
      auto type = tables[slots[s].table]->columns[slots[s].column].type;
      if (type == ColumnType::kText) {
        ok = oracle_lower(std::get<std::string>(v)) == oracle_lower(pred.value.text);
      } else {
        double lit = 0;
        double stored = type == ColumnType::kInteger
                            ? static_cast<double>(std::get<std::int64_t>(v))
                            : std::get<double>(v);
        ok = oracle_number(pred.value.text, lit) && lit == stored;
      }
    }
    if (ok) {
      std::vector<std::string> row;
      for (const auto& col : q.projection) row.push_back(oracle_text(cell(first_slot(col))));
      out.insert(row);
    }

    std::size_t t = 0;
    while (t < pick.size() && ++pick[t] == tables[t]->rows.size()) pick[t++] = 0;
    if (t == pick.size()) break;
  }
  return out;
}

/// Result rows in the same text form the oracle uses, preserving order.
inline std::vector<std::vector<std::string>> as_text(const ResultTable& r) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : r.rows) {
    auto& line = out.emplace_back();
    for (const auto& v : row) line.push_back(oracle_text(v));
  }
  return out;
}

}  // namespace nlq::testing
