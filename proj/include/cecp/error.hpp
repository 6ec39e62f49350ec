#pragma once

#include <stdexcept>
#include <string>

namespace cecp {

enum class ErrorKind {
  invalid_input,
  dimension_mismatch,
  insufficient_data,
  unsupported_dimension,
  invalid_distribution,
  invalid_alphabet,
  parse_error,
  duplicate_date,
  io_error,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::insufficient_data: return "insufficient data";
    case ErrorKind::unsupported_dimension: return "unsupported dimension";
    case ErrorKind::invalid_distribution: return "invalid distribution";
    case ErrorKind::invalid_alphabet: return "invalid alphabet";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::duplicate_date: return "duplicate date";
    case ErrorKind::io_error: return "i/o error";
  }
  return "unknown error";
}

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated so front ends can map it to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cecp
