#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sckb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax errors carry the byte offset into the parsed text and, for KB
// files, the 1-based line number (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0)
      : Error(format(what, offset, line)), offset_(offset), line_(line) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& what, std::size_t offset,
                            std::size_t line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "offset " + std::to_string(offset) + ": " + what;
    return out;
  }

  std::size_t offset_;
  std::size_t line_;
};

class UnknownAtomError : public Error {
 public:
  explicit UnknownAtomError(const std::string& atom)
      : Error("unknown atom '" + atom + "'"), atom_(atom) {}
  const std::string& atom() const noexcept { return atom_; }

 private:
  std::string atom_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InconsistentKB : public Error {
 public:
  using Error::Error;
};

class NoModel : public Error {
 public:
  using Error::Error;
};

}  // namespace sckb
