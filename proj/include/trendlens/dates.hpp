#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace trendlens {

// Calendar date used to label trading-day ordinals. No time-of-day, no zone.
struct Date {
  std::int16_t year = 1970;
  std::uint8_t month = 1;  // 1..12
  std::uint8_t day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;

  bool valid() const;
  std::string iso() const;  // YYYY-MM-DD

  // Accepts ISO 8601 (1964-04-21), dotted day-first (21.04.1964) and
  // slashed year-first (1964/04/21). Throws std::invalid_argument otherwise.
  static Date parse(std::string_view text);

  // Days since 1970-01-01 (civil). Valid for any Gregorian date.
  std::int64_t serial() const;
  static Date from_serial(std::int64_t days);

  int weekday() const;       // 0 = Monday .. 6 = Sunday
  Date next_weekday() const; // next calendar day that is Mon..Fri
};

}  // namespace trendlens
