#include "lrd/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "lrd/error.hpp"
#include "format.hpp"

namespace lrd {

namespace {

constexpr EpochSeconds kDefaultSpacing = 3600;

EpochSeconds modal_spacing(std::span<const EpochSeconds> ts) {
  if (ts.size() < 2) return kDefaultSpacing;
  std::map<EpochSeconds, std::size_t> counts;
  for (std::size_t i = 1; i < ts.size(); ++i) ++counts[ts[i] - ts[i - 1]];
  // Ties resolve to the smallest difference (std::map is ordered).
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

std::vector<std::size_t> derive_gaps(std::span<const EpochSeconds> ts, EpochSeconds spacing) {
  std::vector<std::size_t> gaps;
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ts[i] - ts[i - 1] > spacing) gaps.push_back(i);
  return gaps;
}

std::vector<std::string_view> split_row(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == delimiter && !quoted)) {
      std::string_view f = line.substr(start, i - start);
      while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
      while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r'))
        f.remove_suffix(1);
      if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
      fields.push_back(f);
      start = i + 1;
    }
  }
  return fields;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string_view>& header,
                           std::string_view role) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) {
    if (*index >= header.size())
      throw Error(ErrorKind::parse, std::string(role) + " column index " +
                                        std::to_string(*index) + " out of range (header has " +
                                        std::to_string(header.size()) + " columns)");
    return *index;
  }
  const auto& name = std::get<std::string>(ref);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error(ErrorKind::parse, std::string(role) + " column '" + name + "' not found in header");
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

}  // namespace

std::string to_string(GapPolicy policy) {
  switch (policy) {
    case GapPolicy::reject: return "reject";
    case GapPolicy::drop_and_flag: return "drop-and-flag";
    case GapPolicy::linear_interpolate: return "linear-interpolate";
  }
  return "unknown";
}

GapPolicy parse_gap_policy(std::string_view text) {
  if (text == "reject") return GapPolicy::reject;
  if (text == "drop-and-flag" || text == "drop") return GapPolicy::drop_and_flag;
  if (text == "linear-interpolate" || text == "interpolate") return GapPolicy::linear_interpolate;
  throw Error(ErrorKind::invalid_config, "unknown gap policy '" + std::string(text) + "'");
}

TimeSeries::TimeSeries(std::vector<EpochSeconds> timestamps, std::vector<double> values,
                       std::string units)
    : timestamps_(std::move(timestamps)), values_(std::move(values)), units_(std::move(units)) {
  spacing_ = modal_spacing(timestamps_);
  gaps_ = derive_gaps(timestamps_, spacing_);
  validate();
}

TimeSeries::TimeSeries(std::vector<EpochSeconds> timestamps, std::vector<double> values,
                       EpochSeconds spacing, std::vector<std::size_t> gaps, bool gaps_filled,
                       std::string units)
    : timestamps_(std::move(timestamps)),
      values_(std::move(values)),
      spacing_(spacing),
      gaps_(std::move(gaps)),
      gaps_filled_(gaps_filled),
      units_(std::move(units)) {
  validate();
  if (!gaps_filled_ && gaps_ != derive_gaps(timestamps_, spacing_))
    throw Error(ErrorKind::irregular_spacing, "gap list disagrees with timestamps");
}

TimeSeries TimeSeries::regular(std::vector<double> values, EpochSeconds start,
                               EpochSeconds spacing, std::string units) {
  std::vector<EpochSeconds> ts(values.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    ts[i] = start + static_cast<EpochSeconds>(i) * spacing;
  return TimeSeries(std::move(ts), std::move(values), spacing, {}, false, std::move(units));
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  if (values.size() != values_.size())
    throw Error(ErrorKind::insufficient_data, "with_values: length mismatch");
  TimeSeries out = *this;
  out.values_ = std::move(values);
  return out;
}

void TimeSeries::validate() const {
  if (values_.empty())
    throw Error(ErrorKind::insufficient_data, "time series must contain at least one value");
  if (values_.size() != timestamps_.size())
    throw Error(ErrorKind::insufficient_data, "timestamps and values differ in length");
  if (spacing_ <= 0) throw Error(ErrorKind::irregular_spacing, "nominal spacing must be positive");
  for (std::size_t i = 1; i < timestamps_.size(); ++i) {
    const EpochSeconds d = timestamps_[i] - timestamps_[i - 1];
    if (d == 0)
      throw Error(ErrorKind::duplicate_timestamp,
                  "duplicate timestamp " + format_iso8601(timestamps_[i]));
    if (d < 0)
      throw Error(ErrorKind::irregular_spacing, "timestamps not strictly increasing at index " +
                                                    std::to_string(i));
    if (d % spacing_ != 0)
      throw Error(ErrorKind::irregular_spacing,
                  "step of " + std::to_string(d) + "s at index " + std::to_string(i) +
                      " is not a multiple of the nominal spacing " + std::to_string(spacing_) + "s");
    if (gaps_filled_ && d != spacing_)
      throw Error(ErrorKind::irregular_spacing, "filled series still has a hole at index " +
                                                    std::to_string(i));
  }
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    if (gaps_[i] >= values_.size() || (i > 0 && gaps_[i] <= gaps_[i - 1]))
      throw Error(ErrorKind::irregular_spacing, "gap positions must be increasing and in range");
  }
}

TimeSeries load_csv(std::istream& source, const IngestConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header_line = line;
    header = split_row(header_line, config.delimiter);
    break;
  }
  if (header.empty()) throw Error(ErrorKind::parse, "input has no header row");
  // Strip a UTF-8 BOM from the first header field.
  if (header[0].size() >= 3 && header[0].substr(0, 3) == "\xEF\xBB\xBF")
    header[0].remove_prefix(3);

  const std::size_t ts_col = resolve_column(config.timestamp_column, header, "timestamp");
  const std::size_t val_col = resolve_column(config.value_column, header, "value");
  const std::size_t needed = std::max(ts_col, val_col) + 1;

  struct Row {
    EpochSeconds t;
    double v;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_row(line, config.delimiter);
    if (fields.size() < needed)
      throw Error(ErrorKind::parse, "row " + std::to_string(line_no) + ": expected at least " +
                                        std::to_string(needed) + " fields, found " +
                                        std::to_string(fields.size()));
    const auto t = parse_timestamp(fields[ts_col]);
    if (!t)
      throw Error(ErrorKind::parse, "row " + std::to_string(line_no) + ": cannot parse timestamp '" +
                                        std::string(fields[ts_col]) + "'");
    const auto v = parse_double(fields[val_col]);
    if (!v)
      throw Error(ErrorKind::parse, "row " + std::to_string(line_no) + ": cannot parse value '" +
                                        std::string(fields[val_col]) + "'");
    rows.push_back({*t, *v, line_no});
  }
  if (rows.empty()) throw Error(ErrorKind::insufficient_data, "input has no data rows");

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].t == rows[i - 1].t)
      throw Error(ErrorKind::duplicate_timestamp,
                  "duplicate timestamp " + format_iso8601(rows[i].t) + " at rows " +
                      std::to_string(rows[i - 1].line) + " and " + std::to_string(rows[i].line));

  std::vector<EpochSeconds> ts(rows.size());
  std::vector<double> vs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ts[i] = rows[i].t;
    vs[i] = rows[i].v;
  }
  const EpochSeconds spacing = modal_spacing(ts);
  const auto holes = derive_gaps(ts, spacing);

  switch (config.gaps) {
    case GapPolicy::reject:
      if (!holes.empty()) {
        const std::size_t i = holes.front();
        throw Error(ErrorKind::gap, "gap after " + format_iso8601(ts[i - 1]) + " (row " +
                                        std::to_string(rows[i - 1].line) + "): next observation at " +
                                        format_iso8601(ts[i]) + ", position " + std::to_string(i));
      }
      return TimeSeries(std::move(ts), std::move(vs), spacing, {}, false, config.units);
    case GapPolicy::drop_and_flag:
      return TimeSeries(std::move(ts), std::move(vs), spacing, holes, false, config.units);
    case GapPolicy::linear_interpolate: {
      std::vector<EpochSeconds> fts;
      std::vector<double> fvs;
      std::vector<std::size_t> filled;
      fts.reserve(ts.size());
      fvs.reserve(vs.size());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i > 0 && ts[i] - ts[i - 1] > spacing) {
          const EpochSeconds span = ts[i] - ts[i - 1];
          for (EpochSeconds t = ts[i - 1] + spacing; t < ts[i]; t += spacing) {
            const double w = static_cast<double>(t - ts[i - 1]) / static_cast<double>(span);
            filled.push_back(fts.size());
            fts.push_back(t);
            fvs.push_back(vs[i - 1] + w * (vs[i] - vs[i - 1]));
          }
        }
        fts.push_back(ts[i]);
        fvs.push_back(vs[i]);
      }
      return TimeSeries(std::move(fts), std::move(fvs), spacing, std::move(filled), true,
                        config.units);
    }
  }
  throw Error(ErrorKind::invalid_config, "unknown gap policy");
}

TimeSeries load_csv_file(const std::string& path, const IngestConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return load_csv(in, config);
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  out << "timestamp,value\n";
  const auto ts = series.timestamps();
  const auto vs = series.values();
  for (std::size_t i = 0; i < series.size(); ++i)
    out << format_iso8601(ts[i]) << ',' << detail::fmt17(vs[i]) << '\n';
}

TimeSeries first_difference(const TimeSeries& series) {
  if (series.size() < 2)
    throw Error(ErrorKind::insufficient_data, "first_difference needs at least 2 values");
  const auto vs = series.values();
  const auto ts = series.timestamps();
  std::vector<double> d(vs.size() - 1);
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) d[i] = vs[i + 1] - vs[i];
  std::vector<EpochSeconds> dts(ts.begin() + 1, ts.end());
  std::vector<std::size_t> gaps;
  if (series.gaps_filled()) {
    for (std::size_t g : series.gaps())
      if (g >= 1) gaps.push_back(g - 1);
  } else {
    gaps = derive_gaps(dts, series.spacing());
  }
  return TimeSeries(std::move(dts), std::move(d), series.spacing(), std::move(gaps),
                    series.gaps_filled(), series.units());
}

TimeSeries integrate(const TimeSeries& series) {
  const auto vs = series.values();
  std::vector<double> y(vs.size());
  std::partial_sum(vs.begin(), vs.end(), y.begin());
  return series.with_values(std::move(y));
}

TimeSeries slice_calendar(const TimeSeries& series, int year) {
  const auto ts = series.timestamps();
  const EpochSeconds lo_t = year_start(year);
  const EpochSeconds hi_t = year_start(year + 1);
  const auto lo = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), lo_t) - ts.begin());
  const auto hi = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), hi_t) - ts.begin());
  if (lo >= hi)
    throw Error(ErrorKind::empty_selection,
                "no observations in calendar year " + std::to_string(year));

  std::vector<EpochSeconds> sts(ts.begin() + static_cast<std::ptrdiff_t>(lo),
                                ts.begin() + static_cast<std::ptrdiff_t>(hi));
  const auto vs = series.values();
  std::vector<double> svs(vs.begin() + static_cast<std::ptrdiff_t>(lo),
                          vs.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<std::size_t> gaps;
  if (series.gaps_filled()) {
    for (std::size_t g : series.gaps())
      if (g >= lo && g < hi) gaps.push_back(g - lo);
  } else {
    gaps = derive_gaps(sts, series.spacing());
  }
  return TimeSeries(std::move(sts), std::move(svs), series.spacing(), std::move(gaps),
                    series.gaps_filled(), series.units());
}

std::vector<int> calendar_years(const TimeSeries& series) {
  const auto ts = series.timestamps();
  std::vector<int> years;
  for (int y = to_civil(ts.front()).year; y <= to_civil(ts.back()).year; ++y) {
    const auto it = std::lower_bound(ts.begin(), ts.end(), year_start(y));
    if (it != ts.end() && *it < year_start(y + 1)) years.push_back(y);
  }
  return years;
}

}  // namespace lrd
