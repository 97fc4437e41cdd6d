#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trendlens/dates.hpp"

namespace trendlens {

/// Daily price history: adjusted close plus traded volume, one row per
/// trading day. The row index is the trading-day ordinal t; weekends and
/// holidays are simply absent rows.
struct PriceSeries {
  std::vector<Date> dates;     // strictly increasing, no duplicates
  std::vector<double> close;   // $, all > 0
  std::vector<double> volume;  // $/day, all >= 0

  // Validates the invariants above plus equal lengths >= 2.
  PriceSeries(std::vector<Date> dates, std::vector<double> close,
              std::vector<double> volume);

  // Synthetic series for generated data: consecutive weekdays from `start`,
  // zero volume.
  static PriceSeries from_closes(std::vector<double> close,
                                 Date start = Date{2000, 1, 3});

  std::size_t size() const { return close.size(); }

  std::optional<std::size_t> ordinal_of(const Date& d) const;
  // First ordinal whose date is >= d (== size() when past the end).
  std::size_t first_on_or_after(const Date& d) const;
  // Last ordinal whose date is <= d; nullopt when d precedes the series.
  std::optional<std::size_t> last_on_or_before(const Date& d) const;
};

/// First or second difference of a price series. `offset` is the ordinal of
/// the first defined element: 1 for daily returns (= speed, $/day), 2 for
/// acceleration ($/day^2). values[k] describes ordinal k + offset.
struct DiffSeries {
  std::vector<double> values;
  std::size_t offset = 1;
};

// values[k] = close[k+1] - close[k]; numerically identical to the daily
// speed of the price movement.
DiffSeries daily_returns(const PriceSeries& series);

// Second difference of close; the discrete acceleration.
DiffSeries acceleration_series(const PriceSeries& series);

}  // namespace trendlens
