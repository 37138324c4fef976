#include "infostab/error.hpp"

namespace infostab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidResolution: return "invalid-resolution";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InvalidDistribution: return "invalid-distribution";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::UnsupportedParameter: return "unsupported-parameter";
    case ErrorKind::Dispatch: return "dispatch";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace infostab
