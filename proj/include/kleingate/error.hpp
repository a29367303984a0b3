#pragma once

#include <stdexcept>
#include <string>

namespace kleingate {

enum class ErrorKind {
  InvalidGeometry,
  EvanescentMode,
  Domain,
  Numeric,
  Search,
};

/// Base exception for every failure raised by the library. The kind lets
/// front ends map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "invalid geometry";
    case ErrorKind::EvanescentMode: return "evanescent mode";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Numeric: return "numeric failure";
    case ErrorKind::Search: return "root search failure";
  }
  return "error";
}

}  // namespace kleingate
