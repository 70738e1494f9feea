#ifndef LRD_SEASONAL_HPP
#define LRD_SEASONAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/series.hpp"

namespace lrd {

enum class PeriodKind { hour_of_day, day_of_week, week_of_year, month_of_year };

std::string to_string(PeriodKind kind);
PeriodKind parse_period_kind(std::string_view text);

struct SeasonalBin {
  int key = 0;  // hour 0..23, ISO weekday 1..7, ISO week 1..53, month 1..12
  std::size_t count = 0;
  std::optional<double> mean;  // absent for empty bins
  std::optional<double> sd;    // n-1 denominator; absent below 2 observations
};

struct SeasonalProfile {
  PeriodKind kind = PeriodKind::hour_of_day;
  std::vector<SeasonalBin> bins;
};

/// Calendar bin of a UTC timestamp.
int seasonal_key(PeriodKind kind, EpochSeconds t);

/// Per-bin moments over all observations mapping to each bin. Interpolated
/// positions of a gap-filled series are left out.
SeasonalProfile seasonal_profile(const TimeSeries& series, PeriodKind kind);

}  // namespace lrd

#endif  // LRD_SEASONAL_HPP
