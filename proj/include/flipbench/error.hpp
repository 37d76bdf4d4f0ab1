#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flipbench {

enum class ErrorCode {
  division_by_zero,
  mismatched_owner,
  unsupported_field,
  infinite_field,
  size_limit,
  invalid_argument,
  zero_argument,
  not_an_automorphism,
  not_a_flip,
  delta_not_a_norm,
  no_such_x,
  tau_not_involutory,
  zero_divisor,
  closure_cap_exceeded,
  parse_error,
  no_witness,
  search_exhausted,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flipbench
