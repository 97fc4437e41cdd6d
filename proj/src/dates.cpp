#include "trendlens/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace trendlens {

namespace {

bool leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, unsigned m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (m == 2 && leap(y)) return 29;
  return kDays[m - 1];
}

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return value;
}

}  // namespace

bool Date::valid() const {
  if (month < 1 || month > 12) return false;
  if (day < 1 || day > days_in_month(year, month)) return false;
  return true;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(year), unsigned(month),
                unsigned(day));
  return buf;
}

Date Date::parse(std::string_view text) {
  char sep = 0;
  for (char c : text)
    if (c == '-' || c == '.' || c == '/') {
      sep = c;
      break;
    }
  if (sep == 0)
    throw std::invalid_argument("unrecognized date: '" + std::string(text) + "'");

  std::array<std::string_view, 3> parts;
  std::size_t n = 0, begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      if (n == 3)
        throw std::invalid_argument("unrecognized date: '" + std::string(text) + "'");
      parts[n++] = text.substr(begin, i - begin);
      begin = i + 1;
    }
  }
  if (n != 3)
    throw std::invalid_argument("unrecognized date: '" + std::string(text) + "'");

  Date d;
  if (sep == '.') {  // day-first: 21.04.1964
    d = Date{std::int16_t(parse_int(parts[2])), std::uint8_t(parse_int(parts[1])),
             std::uint8_t(parse_int(parts[0]))};
  } else {  // year-first: 1964-04-21 or 1964/04/21
    d = Date{std::int16_t(parse_int(parts[0])), std::uint8_t(parse_int(parts[1])),
             std::uint8_t(parse_int(parts[2]))};
  }
  if (!d.valid())
    throw std::invalid_argument("invalid calendar date: '" + std::string(text) + "'");
  return d;
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t Date::serial() const {
  std::int64_t y = year;
  unsigned m = month, d = day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = unsigned(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + std::int64_t(doe) - 719468;
}

Date Date::from_serial(std::int64_t days) {
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = unsigned(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = std::int64_t(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{std::int16_t(y + (m <= 2)), std::uint8_t(m), std::uint8_t(d)};
}

int Date::weekday() const {
  // serial 0 = 1970-01-01, a Thursday (weekday 3).
  std::int64_t w = (serial() + 3) % 7;
  if (w < 0) w += 7;
  return int(w);
}

Date Date::next_weekday() const {
  Date d = from_serial(serial() + 1);
  while (d.weekday() > 4) d = from_serial(d.serial() + 1);
  return d;
}

}  // namespace trendlens
