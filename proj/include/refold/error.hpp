#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace refold {

enum class ErrorKind {
  invalid_input,
  shape,
  insufficient_data,
  numeric,
  config,
  evaluation,
  selection,
  parse,
  io,
  format,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::shape: return "shape";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::config: return "config";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::selection: return "selection";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    case ErrorKind::format: return "format";
  }
  return "unknown";
}

/// Every failure raised by the library. The kind is stable and meant for
/// programmatic handling; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace refold
