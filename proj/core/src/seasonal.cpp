#include "lrd/seasonal.hpp"

#include <algorithm>
#include <cmath>

#include "lrd/error.hpp"

namespace lrd {

namespace {

struct Domain {
  int first;
  int size;
};

Domain domain(PeriodKind kind) {
  switch (kind) {
    case PeriodKind::hour_of_day: return {0, 24};
    case PeriodKind::day_of_week: return {1, 7};
    case PeriodKind::week_of_year: return {1, 53};
    case PeriodKind::month_of_year: return {1, 12};
  }
  return {0, 0};
}

}  // namespace

std::string to_string(PeriodKind kind) {
  switch (kind) {
    case PeriodKind::hour_of_day: return "hour-of-day";
    case PeriodKind::day_of_week: return "day-of-week";
    case PeriodKind::week_of_year: return "week-of-year";
    case PeriodKind::month_of_year: return "month-of-year";
  }
  return "unknown";
}

PeriodKind parse_period_kind(std::string_view text) {
  if (text == "hour-of-day" || text == "hour") return PeriodKind::hour_of_day;
  if (text == "day-of-week" || text == "dow" || text == "day") return PeriodKind::day_of_week;
  if (text == "week-of-year" || text == "week") return PeriodKind::week_of_year;
  if (text == "month-of-year" || text == "month") return PeriodKind::month_of_year;
  throw Error(ErrorKind::invalid_config, "unknown period kind '" + std::string(text) + "'");
}

int seasonal_key(PeriodKind kind, EpochSeconds t) {
  switch (kind) {
    case PeriodKind::hour_of_day: return to_civil(t).hour;
    case PeriodKind::day_of_week: return iso_weekday(t);
    case PeriodKind::week_of_year: return iso_week(t);
    case PeriodKind::month_of_year: return static_cast<int>(to_civil(t).month);
  }
  return 0;
}

SeasonalProfile seasonal_profile(const TimeSeries& series, PeriodKind kind) {
  const Domain d = domain(kind);
  const auto ts = series.timestamps();
  const auto vs = series.values();
  const auto gaps = series.gaps();

  // Welford per bin; insertion order does not matter beyond rounding.
  struct Acc {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double sum = 0.0;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(d.size));
  std::size_t next_gap = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (series.gaps_filled() && next_gap < gaps.size() && gaps[next_gap] == i) {
      ++next_gap;
      continue;
    }
    Acc& a = acc[static_cast<std::size_t>(seasonal_key(kind, ts[i]) - d.first)];
    ++a.n;
    const double delta = vs[i] - a.mean;
    a.mean += delta / static_cast<double>(a.n);
    a.m2 += delta * (vs[i] - a.mean);
    a.sum += vs[i];
  }

  SeasonalProfile p;
  p.kind = kind;
  p.bins.resize(acc.size());
  for (std::size_t b = 0; b < acc.size(); ++b) {
    SeasonalBin& bin = p.bins[b];
    bin.key = d.first + static_cast<int>(b);
    bin.count = acc[b].n;
    if (acc[b].n > 0) bin.mean = acc[b].sum / static_cast<double>(acc[b].n);
    if (acc[b].n > 1) bin.sd = std::sqrt(std::max(0.0, acc[b].m2) / static_cast<double>(acc[b].n - 1));
  }
  return p;
}

}  // namespace lrd
