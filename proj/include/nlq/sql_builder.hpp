#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nlq/error.hpp"
#include "nlq/schema_graph.hpp"
#include "nlq/semantic_mapper.hpp"
#include "nlq/sql_ast.hpp"

namespace nlq {

/// Fills the SELECT DISTINCT template. Projection is the explicit attributes
/// plus the display attribute of every directly named table; with neither,
/// the display attributes of all mapped tables. Tables follow the join plan.
inline SqlQuery build_query(const MappedElements& elements, const SchemaGraph& graph) {
  if (elements.tables.empty()) {
    throw Error(ErrorCode::kNoProjection, "no table was mapped from the question");
  }
  SqlQuery q;
  q.distinct = true;
  q.tables = graph.join_path(elements.tables);

  auto display_of = [&](const std::string& table) {
    const TableInfo* info = graph.table(table);
    if (!info) throw Error(ErrorCode::kUnknownTable, "unknown table '" + table + "'");
    return info->display_attribute;
  };

  for (const auto& a : elements.attributes) q.projection.push_back(a.attribute);
  for (const auto& t : elements.anchor_tables) q.projection.push_back(display_of(t));
  if (q.projection.empty()) {
    for (const auto& t : elements.tables) q.projection.push_back(display_of(t));
  }
  std::sort(q.projection.begin(), q.projection.end());
  q.projection.erase(std::unique(q.projection.begin(), q.projection.end()), q.projection.end());
  if (q.projection.empty()) throw Error(ErrorCode::kNoProjection, "nothing to select");

  for (const auto& p : elements.predicates) {
    q.predicates.push_back(Predicate{p.attribute, Literal::string(p.value)});
  }
  return q;
}

inline std::string quote_sql_string(const std::string& value) {
  std::string out = "'";
  for (char c : value) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

/// SELECT DISTINCT <cols, lexicographic> FROM t1 [NATURAL JOIN ti]*
/// [WHERE a='v' [and a='v']*]
inline std::string render_sql(const SqlQuery& q) {
  std::vector<std::string> cols = q.projection;
  std::sort(cols.begin(), cols.end());

  std::string sql = "SELECT DISTINCT " + join(cols, ", ") + " FROM ";
  for (std::size_t i = 0; i < q.tables.size(); ++i) {
    if (i) sql += " NATURAL JOIN ";
    sql += q.tables[i];
  }
  for (std::size_t i = 0; i < q.predicates.size(); ++i) {
    const auto& p = q.predicates[i];
    sql += i ? " and " : " WHERE ";
    sql += p.column + "=";
    sql += p.value.kind == Literal::Kind::kNumber ? p.value.text : quote_sql_string(p.value.text);
  }
  return sql;
}

}  // namespace nlq
