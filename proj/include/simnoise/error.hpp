#pragma once

#include <stdexcept>
#include <string>

namespace simnoise {

// Every failure raised by the library derives from Error so callers can map
// categories onto exit codes without string matching.
enum class ErrorKind {
  kParameter,              // invalid argument value (rate, cutoff, df, ...)
  kAlignment,              // length or sample-rate mismatch between signals
  kInsufficientRepetitions,
  kUnbalancedDesign,
  kParse,                  // malformed trace / manifest content
  kValidation,             // structurally valid input that violates a rule
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::kParameter, what) {}
};

class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& what)
      : Error(ErrorKind::kAlignment, what) {}
};

class InsufficientRepetitionsError : public Error {
 public:
  explicit InsufficientRepetitionsError(const std::string& what)
      : Error(ErrorKind::kInsufficientRepetitions, what) {}
};

class UnbalancedDesignError : public Error {
 public:
  explicit UnbalancedDesignError(const std::string& what)
      : Error(ErrorKind::kUnbalancedDesign, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::kParse, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace simnoise
