#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nlq/query_service.hpp"

namespace nlq {

inline void print_table(std::ostream& out, const std::vector<std::string>& columns,
                        const std::vector<Row>& rows) {
  std::vector<std::size_t> width;
  for (const auto& c : columns) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(stringify(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto print_line = [&](const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << " | ";
      out << values[i];
      if (i + 1 < values.size()) out << std::string(width[i] - values[i].size(), ' ');
    }
    out << '\n';
  };
  print_line(columns);
  for (std::size_t i = 0; i < width.size(); ++i) {
    if (i) out << "-+-";
    out << std::string(width[i], '-');
  }
  out << '\n';
  for (const auto& line : cells) print_line(line);
  out << '(' << rows.size() << (rows.size() == 1 ? " row)\n" : " rows)\n");
}

inline void print_trace(std::ostream& out, const MappingTrace& trace) {
  out << "mapping:\n";
  for (const auto& e : trace.entries) {
    const auto& c = e.outcome.candidate;
    out << "  " << to_string(c.kind) << " \"" << c.word_text() << "\" ";
    if (e.consumed_by) {
      out << "absorbed by \"" << trace.entries[*e.consumed_by].outcome.candidate.word_text()
          << "\"\n";
      continue;
    }
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, PredicateRef>) {
            out << "-> " << r.table << '.' << r.attribute << " = '" << r.value << "'";
          } else if constexpr (std::is_same_v<R, AttributeRef>) {
            out << "-> attribute " << r.table << '.' << r.attribute;
          } else if constexpr (std::is_same_v<R, TableRef>) {
            out << "-> table " << r.table;
          } else {
            out << "-> unmapped";
          }
        },
        e.outcome.result);
    out << " [" << to_string(e.outcome.source) << (e.duplicate ? ", duplicate" : "") << "]\n";
  }
}

inline void print_response(std::ostream& out, const QueryResponse& r, bool trace) {
  if (r.sql) out << r.sql.value() << '\n';
  if (trace && r.trace) print_trace(out, *r.trace);
  if (r.status == ResponseStatus::kAnswered) {
    print_table(out, *r.columns, *r.rows);
  } else if (r.message) {
    out << r.message.value() << '\n';
  }
}

/// Reads one question per line until EOF or ":quit". Returns 0 on a clean
/// exit and 2 when either stream fails.
inline int run_repl(const Engine& engine, std::istream& in, std::ostream& out, bool trace) {
  std::string line;
  while (true) {
    out << "nlq> " << std::flush;
    if (!std::getline(in, line)) break;
    if (normalize_phrase(line) == ":quit") return out ? 0 : 2;
    if (normalize_phrase(line).empty()) continue;
    print_response(out, answer_question(line, engine), trace);
    if (!out) return 2;
  }
  if (in.bad() || !out) return 2;
  out << '\n';
  return 0;
}

}  // namespace nlq
