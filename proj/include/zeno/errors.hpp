#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Failure categories shared by every module. The numeric values are the
/// ones surfaced through the C API (see zeno.h), so they must stay stable.
enum class ErrorCode : int {
  parse = 1,
  dimension = 2,
  capacity = 3,
  invalid_code = 4,
  rank = 5,
  phase = 6,
  membership = 7,
  assumption_violation = 8,
  domain = 9,
  model = 10,
  precondition = 11,
  degenerate = 12,
  schema = 13,
  io = 14,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised while reading a Pauli label; `position` is the offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::parse, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised by config loading; `path` is a JSON-pointer-like field path.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(ErrorCode::schema, path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace zeno
