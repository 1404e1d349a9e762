#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rxnlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed SMILES / SMARTS text: the string does not follow the grammar.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Grammatically valid input describing an impossible structure
/// (valence violation, unkekulizable aromatic system, ...).
class ChemistryError : public Error {
 public:
  using Error::Error;
};

/// Caller passed something outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A JSONL record or data file violates its documented schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rxnlab
