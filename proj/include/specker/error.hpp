#pragma once

#include <stdexcept>
#include <string>

namespace specker {

enum class ErrorKind {
  InvalidArgument,
  InvalidJointParams,
  MismatchedSharpness,
  IncompatiblePair,
  EmptyWindow,
  ZeroVector,
  InconsistentMarginals,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type so
// callers (the CLI in particular) can map the kind to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace specker
