#include "slspec/error.hpp"

namespace slspec {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::integration_overflow: return "integration-overflow";
    case ErrorKind::missing_eigenvalue: return "missing-eigenvalue";
    case ErrorKind::degenerate_root: return "degenerate-root";
    case ErrorKind::iteration_failure: return "iteration-failure";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::completion: return "completion";
    case ErrorKind::unsolvable_gl: return "unsolvable-gl";
    case ErrorKind::endpoint_degeneracy: return "endpoint-degeneracy";
    case ErrorKind::malformed_data: return "malformed-data";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<long long> index)
    : std::runtime_error(message), kind_(kind), index_(index) {}

}  // namespace slspec
