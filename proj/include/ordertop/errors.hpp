#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordertop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateLabelError : public Error {
 public:
  using Error::Error;
};

class UnknownLabelError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A relation that is not reflexive, antisymmetric and transitive.
class InvalidPosetError : public Error {
 public:
  using Error::Error;
};

class NotALatticeError : public Error {
 public:
  using Error::Error;
};

class SizeBoundExceeded : public Error {
 public:
  using Error::Error;
};

class TruncationNotLattice : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoEscapeWithinDepth : public Error {
 public:
  using Error::Error;
};

class NotConvergentInMeasure : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  enum class Kind { WitnessMismatch, UnboundedFiber };
  ExtractionError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace ordertop
