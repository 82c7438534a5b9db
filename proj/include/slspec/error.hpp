#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slspec {

enum class ErrorKind {
  dimension,
  domain,
  integration_overflow,
  missing_eigenvalue,
  degenerate_root,
  iteration_failure,
  insufficient_data,
  completion,
  unsolvable_gl,
  endpoint_degeneracy,
  malformed_data,
  parse,
  io,
};

/// Stable machine-readable name, e.g. "integration-overflow".
std::string_view to_string(ErrorKind kind) noexcept;

/// Library error. `index()` carries the step or eigenvalue index when the
/// failure is tied to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<long long> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<long long> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<long long> index_;
};

}  // namespace slspec
