#ifndef LRD_SERIES_HPP
#define LRD_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lrd/calendar.hpp"

namespace lrd {

enum class GapPolicy {
  reject,
  drop_and_flag,
  linear_interpolate,
};

std::string to_string(GapPolicy policy);
GapPolicy parse_gap_policy(std::string_view text);

/// A column is addressed either by its header name or by zero-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct IngestConfig {
  ColumnRef timestamp_column = std::size_t{0};
  ColumnRef value_column = std::size_t{1};
  char delimiter = ',';
  GapPolicy gaps = GapPolicy::drop_and_flag;
  std::string units;
};

/// Regularly spaced sequence of timestamped observations.
///
/// Immutable once built. `gaps()` lists positions `i` such that a hole in the
/// nominal grid sits immediately before element `i` (drop-and-flag), or, when
/// `gaps_filled()` is true, positions whose values were synthesized by linear
/// interpolation.
class TimeSeries {
 public:
  /// Validates the invariants and infers the nominal spacing as the modal
  /// adjacent difference. Gap positions are derived from the timestamps.
  TimeSeries(std::vector<EpochSeconds> timestamps, std::vector<double> values,
             std::string units = {});

  /// Fully specified constructor; `gaps` must agree with the timestamps.
  TimeSeries(std::vector<EpochSeconds> timestamps, std::vector<double> values,
             EpochSeconds spacing, std::vector<std::size_t> gaps, bool gaps_filled,
             std::string units = {});

  /// Hourly grid starting at `start`, no gaps.
  static TimeSeries regular(std::vector<double> values, EpochSeconds start = 0,
                            EpochSeconds spacing = 3600, std::string units = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const EpochSeconds> timestamps() const noexcept { return timestamps_; }
  std::span<const std::size_t> gaps() const noexcept { return gaps_; }
  bool gaps_filled() const noexcept { return gaps_filled_; }
  EpochSeconds spacing() const noexcept { return spacing_; }
  const std::string& units() const noexcept { return units_; }

  /// Same grid, new values. Length must match.
  TimeSeries with_values(std::vector<double> values) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  void validate() const;

  std::vector<EpochSeconds> timestamps_;
  std::vector<double> values_;
  EpochSeconds spacing_ = 0;
  std::vector<std::size_t> gaps_;
  bool gaps_filled_ = false;
  std::string units_;
};

TimeSeries load_csv(std::istream& source, const IngestConfig& config = {});
TimeSeries load_csv_file(const std::string& path, const IngestConfig& config = {});

/// Writes `timestamp,value` with ISO-8601 stamps and 17 significant digits.
void write_csv(std::ostream& out, const TimeSeries& series);

/// x[t+1] - x[t], stamped with the later element.
TimeSeries first_difference(const TimeSeries& series);

/// Running sum.
TimeSeries integrate(const TimeSeries& series);

/// Observations stamped within the given UTC calendar year.
TimeSeries slice_calendar(const TimeSeries& series, int year);

/// Distinct UTC calendar years covered, ascending.
std::vector<int> calendar_years(const TimeSeries& series);

}  // namespace lrd

#endif  // LRD_SERIES_HPP
