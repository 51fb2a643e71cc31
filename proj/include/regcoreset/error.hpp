#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regcoreset {

enum class ErrorKind {
  invalid_parameter,
  shape_error,
  rank_deficiency,
  conditioning_failure,
  scheme_mismatch,
  dimension_too_large,
  invalid_scores,
  theorem_inapplicable,
  degenerate_signal,
  parse_error,
  schema_error,
};

std::string_view to_string(ErrorKind kind);

/// Validation failure raised by library operations. Anything else escaping
/// the library (std::logic_error, std::bad_alloc, ...) is an internal error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace regcoreset
