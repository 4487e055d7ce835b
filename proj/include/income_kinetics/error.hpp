#pragma once

#include <stdexcept>
#include <string>

namespace ikin {

enum class ErrorKind {
  domain,       // argument outside a formula's domain
  parse,        // malformed input text
  validation,   // well-formed but violates an invariant
  coverage,     // a year or age range is not covered
  io,           // file could not be opened or written
  alignment,    // curves do not share an age grid
  internal,
};

const char* to_string(ErrorKind kind) noexcept;

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

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace ikin
