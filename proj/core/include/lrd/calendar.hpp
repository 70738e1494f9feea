#ifndef LRD_CALENDAR_HPP
#define LRD_CALENDAR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lrd {

/// Seconds since 1970-01-01T00:00:00Z.
using EpochSeconds = std::int64_t;

/// Broken-down UTC time.
struct CivilTime {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

CivilTime to_civil(EpochSeconds t);
EpochSeconds from_civil(const CivilTime& c);

/// First second of the given UTC calendar year.
EpochSeconds year_start(int year);

/// ISO weekday, Monday = 1 ... Sunday = 7.
int iso_weekday(EpochSeconds t);

/// ISO-8601 week number, 1..53.
int iso_week(EpochSeconds t);

/// Accepts `YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]`, a bare date, or
/// an integer count of epoch seconds. Offsets are folded into UTC.
std::optional<EpochSeconds> parse_timestamp(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(EpochSeconds t);

}  // namespace lrd

#endif  // LRD_CALENDAR_HPP
