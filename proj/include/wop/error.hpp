#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wop {

// Base class for all toolkit errors. `code` is a stable machine-readable
// tag ("semiring-mismatch", "unknown-symbol", ...) used by the CLI to pick
// exit codes and to emit structured error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Malformed input: files, weight literals, words, formulas.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A documented operation precondition does not hold (commutativity-required,
// determinism-required, restricted-required, compatibility, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace wop
