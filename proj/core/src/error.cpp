#include "lrd/error.hpp"

namespace lrd {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::duplicate_timestamp: return "duplicate_timestamp";
    case ErrorKind::gap: return "gap";
    case ErrorKind::irregular_spacing: return "irregular_spacing";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::empty_selection: return "empty_selection";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::invalid_config: return "invalid_config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace lrd
