#pragma once

#include <string>
#include <vector>

namespace nlq {

/// Right-hand side of an equality predicate. Numbers keep their source
/// lexeme so that rendering and re-parsing is exact.
struct Literal {
  enum class Kind { kText, kNumber };
  Kind kind = Kind::kText;
  std::string text;

  static Literal string(std::string s) { return Literal{Kind::kText, std::move(s)}; }
  static Literal number(std::string lexeme) { return Literal{Kind::kNumber, std::move(lexeme)}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Predicate {
  std::string column;
  Literal value;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// SELECT DISTINCT <projection> FROM t1 NATURAL JOIN t2 ... WHERE p1 and p2 ...
///
/// Column names are unqualified; they are resolved against the joined tables
/// at execution time.
struct SqlQuery {
  bool distinct = true;
  std::vector<std::string> projection;
  std::vector<std::string> tables;
  std::vector<Predicate> predicates;
  friend bool operator==(const SqlQuery&, const SqlQuery&) = default;
};

}  // namespace nlq
