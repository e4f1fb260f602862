#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acstab {

// Numeric values are part of the C ABI (see acstab.h); do not renumber.
enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  mode_mismatch = 3,
  parse_error = 4,
  divergent_series = 5,
  overflow_guard = 6,
  excluded_exponent = 7,
  no_certified_envelope = 8,
  io_error = 9,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace acstab
