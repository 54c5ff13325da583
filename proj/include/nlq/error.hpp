#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlq {

enum class ErrorCode {
  kEmptyQuestion,
  kQuestionTooLong,
  kConfigError,
  kGraphCorrupt,
  kDisconnectedTables,
  kHeaderMismatch,
  kTypeError,
  kRaggedRow,
  kSyntaxError,
  kUnknownTable,
  kUnknownColumn,
  kNoSharedColumns,
  kNothingMapped,
  kNoProjection,
  kIoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyQuestion: return "EmptyQuestion";
    case ErrorCode::kQuestionTooLong: return "QuestionTooLong";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kGraphCorrupt: return "GraphCorrupt";
    case ErrorCode::kDisconnectedTables: return "DisconnectedTables";
    case ErrorCode::kHeaderMismatch: return "HeaderMismatch";
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kRaggedRow: return "RaggedRow";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownTable: return "UnknownTable";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kNoSharedColumns: return "NoSharedColumns";
    case ErrorCode::kNothingMapped: return "NothingMapped";
    case ErrorCode::kNoProjection: return "NoProjection";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Base of every error raised by the library. The code is stable and is what
/// callers (and tests) should branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::kSyntaxError, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DisconnectedTables : public Error {
 public:
  explicit DisconnectedTables(std::vector<std::string> unreachable)
      : Error(ErrorCode::kDisconnectedTables, describe(unreachable)),
        unreachable_(std::move(unreachable)) {}

  const std::vector<std::string>& unreachable() const noexcept { return unreachable_; }

 private:
  static std::string describe(const std::vector<std::string>& tables) {
    std::string out = "no join path reaches";
    for (const auto& t : tables) out += " " + t;
    return out;
  }

  std::vector<std::string> unreachable_;
};

/// CSV loading failure. `row` is 1-based over data rows (the header is row 0).
class CsvError : public Error {
 public:
  CsvError(ErrorCode code, std::size_t row, std::string column, const std::string& message)
      : Error(code, message), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

}  // namespace nlq
