#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

namespace nlq {

enum class ColumnType { kText, kReal, kInteger };

inline std::string_view to_string(ColumnType t) {
  switch (t) {
    case ColumnType::kText: return "text";
    case ColumnType::kReal: return "real";
    case ColumnType::kInteger: return "integer";
  }
  return "text";
}

inline std::optional<ColumnType> parse_column_type(std::string_view s) {
  if (s == "text") return ColumnType::kText;
  if (s == "real") return ColumnType::kReal;
  if (s == "integer") return ColumnType::kInteger;
  return std::nullopt;
}

struct ColumnDef {
  std::string name;
  ColumnType type = ColumnType::kText;
  friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

using Value = std::variant<std::string, std::int64_t, double>;

/// Whole-string integer parse; rejects signs other than a leading '-',
/// whitespace and trailing junk.
inline std::optional<std::int64_t> parse_integer(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_real(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Shortest round-trip text for a value. Used for display, for result
/// ordering and for exact join-key comparison.
inline std::string stringify(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(v));
  return std::string(buf, ptr);
}

}  // namespace nlq
