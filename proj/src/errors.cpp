#include "acstab/errors.hpp"

namespace acstab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::mode_mismatch: return "mode mismatch";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::divergent_series: return "divergent series";
    case ErrorCode::overflow_guard: return "overflow guard";
    case ErrorCode::excluded_exponent: return "excluded exponent";
    case ErrorCode::no_certified_envelope: return "no certified envelope";
    case ErrorCode::io_error: return "i/o error";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace acstab
