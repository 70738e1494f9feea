#include "lrd/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace lrd {

namespace {

constexpr EpochSeconds kSecondsPerDay = 86400;

EpochSeconds floor_div(EpochSeconds a, EpochSeconds b) {
  EpochSeconds q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::chrono::sys_days to_days(EpochSeconds t) {
  return std::chrono::sys_days{std::chrono::days{floor_div(t, kSecondsPerDay)}};
}

// Reads exactly `width` decimal digits starting at `pos`.
bool read_fixed(std::string_view s, std::size_t& pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  pos += width;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

std::optional<EpochSeconds> parse_epoch(std::string_view s) {
  EpochSeconds value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

CivilTime to_civil(EpochSeconds t) {
  using namespace std::chrono;
  const year_month_day ymd{to_days(t)};
  const EpochSeconds secs = t - floor_div(t, kSecondsPerDay) * kSecondsPerDay;
  CivilTime c;
  c.year = static_cast<int>(ymd.year());
  c.month = static_cast<unsigned>(ymd.month());
  c.day = static_cast<unsigned>(ymd.day());
  c.hour = static_cast<int>(secs / 3600);
  c.minute = static_cast<int>((secs % 3600) / 60);
  c.second = static_cast<int>(secs % 60);
  return c;
}

EpochSeconds from_civil(const CivilTime& c) {
  using namespace std::chrono;
  const sys_days d{year{c.year} / month{c.month} / day{c.day}};
  return static_cast<EpochSeconds>(d.time_since_epoch().count()) * kSecondsPerDay +
         c.hour * 3600 + c.minute * 60 + c.second;
}

EpochSeconds year_start(int y) { return from_civil(CivilTime{y, 1, 1, 0, 0, 0}); }

int iso_weekday(EpochSeconds t) {
  return static_cast<int>(std::chrono::weekday{to_days(t)}.iso_encoding());
}

int iso_week(EpochSeconds t) {
  using namespace std::chrono;
  const sys_days d = to_days(t);
  // The ISO week belongs to the year containing its Thursday.
  const sys_days thursday = d + days{4 - iso_weekday(t)};
  const year_month_day ymd{thursday};
  const sys_days jan1{ymd.year() / January / 1};
  return static_cast<int>((thursday - jan1).count() / 7) + 1;
}

std::optional<EpochSeconds> parse_timestamp(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (text.find('-', 1) == std::string_view::npos && text.find(':') == std::string_view::npos)
    return parse_epoch(text);

  std::size_t pos = 0;
  CivilTime c;
  int month = 0;
  int day = 0;
  if (!read_fixed(text, pos, 4, c.year) || !expect(text, pos, '-') ||
      !read_fixed(text, pos, 2, month) || !expect(text, pos, '-') ||
      !read_fixed(text, pos, 2, day))
    return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  c.month = static_cast<unsigned>(month);
  c.day = static_cast<unsigned>(day);
  if (!std::chrono::year_month_day{std::chrono::year{c.year} / c.month / c.day}.ok())
    return std::nullopt;

  EpochSeconds offset = 0;
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
    ++pos;
    if (!read_fixed(text, pos, 2, c.hour) || !expect(text, pos, ':') ||
        !read_fixed(text, pos, 2, c.minute))
      return std::nullopt;
    if (expect(text, pos, ':')) {
      if (!read_fixed(text, pos, 2, c.second)) return std::nullopt;
      if (expect(text, pos, '.') || expect(text, pos, ',')) {
        // Sub-second precision is discarded.
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      }
    }
    if (c.hour > 23 || c.minute > 59 || c.second > 60) return std::nullopt;
    if (pos < text.size()) {
      const char sign = text[pos];
      if (sign == 'Z') {
        ++pos;
      } else if (sign == '+' || sign == '-') {
        ++pos;
        int oh = 0;
        int om = 0;
        if (!read_fixed(text, pos, 2, oh)) return std::nullopt;
        expect(text, pos, ':');
        if (pos < text.size() && !read_fixed(text, pos, 2, om)) return std::nullopt;
        offset = (sign == '+' ? 1 : -1) * (oh * 3600 + om * 60);
      } else {
        return std::nullopt;
      }
    }
    if (pos != text.size()) return std::nullopt;
  }
  return from_civil(c) - offset;
}

std::string format_iso8601(EpochSeconds t) {
  const CivilTime c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", c.year, c.month, c.day,
                c.hour, c.minute, c.second);
  return buf;
}

}  // namespace lrd
