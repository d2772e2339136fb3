#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netstab {

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input content. `line()` is 1-based for line-oriented sources and
// 0 when the problem concerns the file as a whole.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A tabular or structured input does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& msg, std::string column)
      : std::runtime_error(msg), column_(std::move(column)) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

}  // namespace netstab
