#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcgrid {

/// Bad argument to a lookup or evaluation (NaN key, index out of range, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A GridSet was rejected by build_cascade. Carries the offending grid
/// (0-based) and the index within it, or npos when the problem is global.
class BuildError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BuildError(const std::string& what, std::size_t grid, std::size_t index)
      : std::runtime_error(what), grid_(grid), index_(index) {}

  std::size_t grid() const noexcept { return grid_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t grid_;
  std::size_t index_;
};

/// A cascade was paired with grids (or tables) of a different shape.
class StructureMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text grid document could not be parsed. line/column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fcgrid
