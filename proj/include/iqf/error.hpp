#pragma once

#include <stdexcept>
#include <string>

namespace iqf {

/// Raised when an operation's mathematical precondition fails (singular
/// matrix, non-tangent pair, mixed quadratic fields, ...). `code()` is a
/// stable machine-readable tag used by the CLI error envelope.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::domain_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace iqf
