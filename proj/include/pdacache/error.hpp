#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdacache {

// Root of every error thrown by the library. `kind()` is a stable short tag
// used by the CLI when it emits machine-readable diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error("parse", "line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Which defining condition of a placement delivery array failed.
enum class Condition { kBlank, kC1, kC2, kC3 };

class ValidationError : public Error {
 public:
  ValidationError(Condition c, const std::string& msg)
      : Error("validation", msg), condition_(c) {}
  Condition condition() const noexcept { return condition_; }

 private:
  Condition condition_;
};

// Raised when an operation needs structure the array does not have
// (non-uniform useless-star counts, misplaced blanks).
class UnsupportedArrayError : public Error {
 public:
  explicit UnsupportedArrayError(const std::string& msg)
      : Error("unsupported_array", msg) {}
};

class ParamError : public Error {
 public:
  explicit ParamError(const std::string& msg) : Error("parameters", msg) {}
};

class CodecError : public Error {
 public:
  explicit CodecError(const std::string& msg) : Error("codec", msg) {}
};

class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& msg)
      : Error("simulation", msg) {}
};

}  // namespace pdacache
