#ifndef LRD_ERROR_HPP
#define LRD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrd {

enum class ErrorKind {
  parse,              // malformed input row or field
  duplicate_timestamp,
  gap,                // gap found under the reject policy
  irregular_spacing,
  insufficient_data,
  empty_selection,
  degenerate,         // numerically degenerate fit or series
  undefined,          // statistic undefined for this input (zero variance etc.)
  invalid_config,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is stable and meant for
/// programmatic dispatch; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lrd

#endif  // LRD_ERROR_HPP
