// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algexpr {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Expression fails one of the structural invariants checked by validate().
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Directed input where undirected is required, or vice versa.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Weight file problems: unreadable lines, missing or unknown vertices.
class WeightError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. an infeasible potential).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Handler failure inside fold(), annotated with the failing node.
class FoldError : public Error {
 public:
  FoldError(const std::string& path, const std::string& message,
            bool contract = false)
      : Error(path + ": " + message), path_(path), contract_(contract) {}

  const std::string& path() const { return path_; }
  /// The handler reported a ContractViolation.
  bool contract() const { return contract_; }

 private:
  std::string path_;
  bool contract_;
};

}  // namespace algexpr
