#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infostab {

enum class ErrorKind {
  InvalidResolution,
  Domain,
  InvalidDistribution,
  Configuration,
  UnsupportedParameter,
  Dispatch,
  HypothesisViolation,
  Budget,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` lets callers (the CLI in
/// particular) map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace infostab
