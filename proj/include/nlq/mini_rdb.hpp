#pragma once

// Embedded relational engine: RFC-4180 CSV loading, a parser for the
// restricted SELECT DISTINCT ... NATURAL JOIN ... WHERE a='v' and ... dialect,
// and a materializing executor.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlq/error.hpp"
#include "nlq/sql_ast.hpp"
#include "nlq/strings.hpp"
#include "nlq/value.hpp"

namespace nlq {

using Row = std::vector<Value>;

struct Table {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<Row> rows;

  std::optional<std::size_t> column_index(std::string_view col) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i].name == col) return i;
    }
    return std::nullopt;
  }
};

class Database {
 public:
  void add(Table table) {
    auto name = table.name;
    if (!tables_.emplace(name, std::move(table)).second) {
      throw Error(ErrorCode::kConfigError, "duplicate table '" + name + "'");
    }
  }

  const Table* find(std::string_view name) const {
    auto it = tables_.find(std::string(name));
    return it == tables_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, Table>& tables() const { return tables_; }

 private:
  std::map<std::string, Table> tables_;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// ---------------------------------------------------------------------------
// CSV

namespace detail {

/// Splits RFC-4180 text into records. Quoted fields may contain commas,
/// newlines and doubled quotes. Lines with no characters at all are skipped.
inline std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool line_has_content = false;
  std::size_t i = 0;

  auto end_record = [&] {
    if (line_has_content) {
      record.push_back(std::move(field));
      records.push_back(std::move(record));
    }
    record.clear();
    field.clear();
    line_has_content = false;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '"' && field.empty()) {
      line_has_content = true;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field += text[i++];
      }
      if (!closed) {
        throw CsvError(ErrorCode::kRaggedRow, records.size(), "",
                       "unterminated quoted field in record " + std::to_string(records.size()));
      }
      continue;
    }
    if (c == ',') {
      line_has_content = true;
      record.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      i += 2;
    } else if (c == '\n') {
      end_record();
      ++i;
    } else {
      line_has_content = true;
      field += c;
      ++i;
    }
  }
  end_record();
  return records;
}

}  // namespace detail

/// Reads a CSV whose header must equal the declared column names, in order.
/// Text is kept verbatim; integer and real cells must parse completely.
inline Table load_csv(std::istream& in, const std::string& table_name,
                      const std::vector<ColumnDef>& schema) {
  auto records = detail::read_csv_records(in);
  if (records.empty()) {
    throw CsvError(ErrorCode::kHeaderMismatch, 0, "", "missing header in " + table_name);
  }
  const auto& header = records.front();
  bool header_ok = header.size() == schema.size();
  for (std::size_t i = 0; header_ok && i < header.size(); ++i) {
    header_ok = header[i] == schema[i].name;
  }
  if (!header_ok) {
    std::vector<std::string> expected;
    for (const auto& c : schema) expected.push_back(c.name);
    throw CsvError(ErrorCode::kHeaderMismatch, 0, "",
                   table_name + ": header '" + join(header, ",") + "' does not match '" +
                       join(expected, ",") + "'");
  }

  Table table{table_name, schema, {}};
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != schema.size()) {
      throw CsvError(ErrorCode::kRaggedRow, r, "",
                     table_name + ": row " + std::to_string(r) + " has " +
                         std::to_string(rec.size()) + " fields, expected " +
                         std::to_string(schema.size()));
    }
    Row row;
    row.reserve(rec.size());
    for (std::size_t c = 0; c < rec.size(); ++c) {
      const auto& col = schema[c];
      switch (col.type) {
        case ColumnType::kText:
          row.emplace_back(rec[c]);
          break;
        case ColumnType::kInteger: {
          auto v = parse_integer(rec[c]);
          if (!v) {
            throw CsvError(ErrorCode::kTypeError, r, col.name,
                           table_name + ": row " + std::to_string(r) + " column " + col.name +
                               ": '" + rec[c] + "' is not an integer");
          }
          row.emplace_back(*v);
          break;
        }
        case ColumnType::kReal: {
          auto v = parse_real(rec[c]);
          if (!v) {
            throw CsvError(ErrorCode::kTypeError, r, col.name,
                           table_name + ": row " + std::to_string(r) + " column " + col.name +
                               ": '" + rec[c] + "' is not a real");
          }
          row.emplace_back(*v);
          break;
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

struct SqlToken {
  enum class Kind { kWord, kString, kNumber, kComma, kEquals, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t pos = 0;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<SqlToken> lex_sql(std::string_view sql) {
  std::vector<SqlToken> out;
  std::size_t i = 0;
  while (i < sql.size()) {
    char c = sql[i];
    if (is_ascii_space(c)) {
      ++i;
    } else if (c == ',') {
      out.push_back({SqlToken::Kind::kComma, ",", i++});
    } else if (c == '=') {
      out.push_back({SqlToken::Kind::kEquals, "=", i++});
    } else if (c == '\'') {
      std::size_t start = i++;
      std::string value;
      bool closed = false;
      while (i < sql.size()) {
        if (sql[i] == '\'') {
          if (i + 1 < sql.size() && sql[i + 1] == '\'') {
            value += '\'';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        value += sql[i++];
      }
      if (!closed) throw SyntaxError(start, "unterminated string literal");
      out.push_back({SqlToken::Kind::kString, std::move(value), start});
    } else if (is_digit(c) || (c == '-' && i + 1 < sql.size() && is_digit(sql[i + 1]))) {
      std::size_t start = i++;
      while (i < sql.size() && is_digit(sql[i])) ++i;
      if (i < sql.size() && sql[i] == '.') {
        ++i;
        if (i >= sql.size() || !is_digit(sql[i])) throw SyntaxError(i, "malformed number");
        while (i < sql.size() && is_digit(sql[i])) ++i;
      }
      if (i < sql.size() && is_ident_char(sql[i])) throw SyntaxError(i, "malformed number");
      out.push_back({SqlToken::Kind::kNumber, std::string(sql.substr(start, i - start)), start});
    } else if (is_ident_start(c)) {
      std::size_t start = i;
      while (i < sql.size() && is_ident_char(sql[i])) ++i;
      out.push_back({SqlToken::Kind::kWord, std::string(sql.substr(start, i - start)), start});
    } else {
      throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({SqlToken::Kind::kEnd, "", sql.size()});
  return out;
}

inline bool is_keyword(std::string_view w) {
  static constexpr std::string_view kKeywords[] = {"select", "distinct", "from", "natural",
                                                   "join",   "where",    "and"};
  return std::any_of(std::begin(kKeywords), std::end(kKeywords),
                     [&](std::string_view k) { return iequals(k, w); });
}

class SqlParser {
 public:
  explicit SqlParser(std::string_view sql) : tokens_(lex_sql(sql)) {}

  SqlQuery parse() {
    SqlQuery q;
    keyword("SELECT");
    keyword("DISTINCT");
    q.distinct = true;
    q.projection.push_back(identifier("column name"));
    while (peek().kind == SqlToken::Kind::kComma) {
      ++pos_;
      q.projection.push_back(identifier("column name"));
    }
    keyword("FROM");
    q.tables.push_back(identifier("table name"));
    while (at_keyword("NATURAL")) {
      ++pos_;
      keyword("JOIN");
      q.tables.push_back(identifier("table name"));
    }
    if (at_keyword("WHERE")) {
      ++pos_;
      q.predicates.push_back(predicate());
      while (at_keyword("AND")) {
        ++pos_;
        q.predicates.push_back(predicate());
      }
    }
    if (peek().kind != SqlToken::Kind::kEnd) {
      throw SyntaxError(peek().pos, "unexpected '" + peek().text + "'");
    }
    return q;
  }

 private:
  const SqlToken& peek() const { return tokens_[pos_]; }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == SqlToken::Kind::kWord && iequals(peek().text, kw);
  }

  void keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      throw SyntaxError(peek().pos, "expected " + std::string(kw) + describe_found());
    }
    ++pos_;
  }

  std::string identifier(std::string_view what) {
    const auto& t = peek();
    if (t.kind != SqlToken::Kind::kWord || is_keyword(t.text)) {
      throw SyntaxError(t.pos, "expected " + std::string(what) + describe_found());
    }
    ++pos_;
    return t.text;
  }

  Predicate predicate() {
    Predicate p;
    p.column = identifier("column name");
    if (peek().kind != SqlToken::Kind::kEquals) {
      throw SyntaxError(peek().pos, "expected '='" + describe_found());
    }
    ++pos_;
    const auto& t = peek();
    if (t.kind == SqlToken::Kind::kString) {
      p.value = Literal::string(t.text);
    } else if (t.kind == SqlToken::Kind::kNumber) {
      p.value = Literal::number(t.text);
    } else {
      throw SyntaxError(t.pos, "expected a quoted string or number" + describe_found());
    }
    ++pos_;
    return p;
  }

  std::string describe_found() const {
    if (peek().kind == SqlToken::Kind::kEnd) return ", found end of input";
    return ", found '" + peek().text + "'";
  }

  std::vector<SqlToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the restricted dialect. Keywords are case-insensitive. Table and
/// column names are not checked here; execute() reports unknown names.
inline SqlQuery parse_sql(std::string_view sql) { return detail::SqlParser(sql).parse(); }

// ---------------------------------------------------------------------------
// Execution

/// Equi-join on every shared column name. Output columns are t1's followed by
/// t2's non-shared columns. Keys compare exactly on their text form.
inline Table natural_join(const Table& left, const Table& right) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  std::vector<std::size_t> right_only;
  for (std::size_t j = 0; j < right.columns.size(); ++j) {
    if (auto i = left.column_index(right.columns[j].name)) {
      shared.emplace_back(*i, j);
    } else {
      right_only.push_back(j);
    }
  }
  if (shared.empty()) {
    throw Error(ErrorCode::kNoSharedColumns,
                "'" + left.name + "' and '" + right.name + "' share no column");
  }

  Table out;
  out.name = left.name + " NATURAL JOIN " + right.name;
  out.columns = left.columns;
  for (std::size_t j : right_only) out.columns.push_back(right.columns[j]);

  auto key_of = [&](const Row& row, bool is_left) {
    std::vector<std::string> key;
    key.reserve(shared.size());
    for (const auto& [li, ri] : shared) key.push_back(stringify(row[is_left ? li : ri]));
    return key;
  };

  std::map<std::vector<std::string>, std::vector<std::size_t>> right_by_key;
  for (std::size_t r = 0; r < right.rows.size(); ++r) {
    right_by_key[key_of(right.rows[r], false)].push_back(r);
  }
  for (const auto& lrow : left.rows) {
    auto it = right_by_key.find(key_of(lrow, true));
    if (it == right_by_key.end()) continue;
    for (std::size_t r : it->second) {
      Row joined = lrow;
      for (std::size_t j : right_only) joined.push_back(right.rows[r][j]);
      out.rows.push_back(std::move(joined));
    }
  }
  return out;
}

namespace detail {

// Text compares case-insensitively; numeric columns compare numerically and
// never match a literal that does not parse as a number.
inline bool predicate_matches(const Value& cell, ColumnType type, const Literal& lit) {
  switch (type) {
    case ColumnType::kText:
      return iequals(std::get<std::string>(cell), lit.text);
    case ColumnType::kInteger: {
      auto stored = std::get<std::int64_t>(cell);
      if (auto i = parse_integer(lit.text)) return *i == stored;
      if (auto d = parse_real(lit.text)) return *d == static_cast<double>(stored);
      return false;
    }
    case ColumnType::kReal: {
      auto d = parse_real(lit.text);
      return d && *d == std::get<double>(cell);
    }
  }
  return false;
}

}  // namespace detail

inline ResultTable execute(const SqlQuery& q, const Database& db) {
  if (q.tables.empty()) throw Error(ErrorCode::kUnknownTable, "query names no table");
  std::vector<const Table*> inputs;
  for (const auto& name : q.tables) {
    const Table* t = db.find(name);
    if (!t) throw Error(ErrorCode::kUnknownTable, "unknown table '" + name + "'");
    inputs.push_back(t);
  }

  Table joined = *inputs.front();
  for (std::size_t i = 1; i < inputs.size(); ++i) joined = natural_join(joined, *inputs[i]);

  auto column = [&](const std::string& name) {
    auto idx = joined.column_index(name);
    if (!idx) throw Error(ErrorCode::kUnknownColumn, "unknown column '" + name + "'");
    return *idx;
  };
  std::vector<std::size_t> projected;
  for (const auto& c : q.projection) projected.push_back(column(c));
  std::vector<std::pair<std::size_t, const Literal*>> filters;
  for (const auto& p : q.predicates) filters.emplace_back(column(p.column), &p.value);

  std::map<std::vector<std::string>, Row> distinct_rows;
  for (const auto& row : joined.rows) {
    bool keep = std::all_of(filters.begin(), filters.end(), [&](const auto& f) {
      return detail::predicate_matches(row[f.first], joined.columns[f.first].type, *f.second);
    });
    if (!keep) continue;
    Row out;
    std::vector<std::string> key;
    for (std::size_t idx : projected) {
      out.push_back(row[idx]);
      key.push_back(stringify(row[idx]));
    }
    distinct_rows.emplace(std::move(key), std::move(out));
  }

  ResultTable result;
  result.columns = q.projection;
  for (auto& [key, row] : distinct_rows) result.rows.push_back(std::move(row));
  return result;
}

}  // namespace nlq
