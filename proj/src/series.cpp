#include "trendlens/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace trendlens {

PriceSeries::PriceSeries(std::vector<Date> dates_, std::vector<double> close_,
                         std::vector<double> volume_)
    : dates(std::move(dates_)), close(std::move(close_)), volume(std::move(volume_)) {
  if (close.size() != dates.size() || volume.size() != dates.size())
    throw std::invalid_argument("price series columns must have equal length");
  if (dates.size() < 2)
    throw std::invalid_argument("price series needs at least 2 rows");
  for (std::size_t i = 0; i < dates.size(); ++i) {
    if (!dates[i].valid())
      throw std::invalid_argument("invalid date at ordinal " + std::to_string(i));
    if (i > 0 && !(dates[i - 1] < dates[i]))
      throw std::invalid_argument("dates must be strictly increasing (ordinal " +
                                  std::to_string(i) + ")");
    if (!(close[i] > 0.0))
      throw std::domain_error("non-positive close at ordinal " + std::to_string(i));
    if (volume[i] < 0.0)
      throw std::domain_error("negative volume at ordinal " + std::to_string(i));
  }
}

PriceSeries PriceSeries::from_closes(std::vector<double> close, Date start) {
  std::vector<Date> dates;
  dates.reserve(close.size());
  Date d = start.weekday() > 4 ? start.next_weekday() : start;
  for (std::size_t i = 0; i < close.size(); ++i) {
    dates.push_back(d);
    d = d.next_weekday();
  }
  std::vector<double> volume(close.size(), 0.0);
  return PriceSeries(std::move(dates), std::move(close), std::move(volume));
}

std::optional<std::size_t> PriceSeries::ordinal_of(const Date& d) const {
  auto it = std::lower_bound(dates.begin(), dates.end(), d);
  if (it == dates.end() || *it != d) return std::nullopt;
  return std::size_t(it - dates.begin());
}

std::size_t PriceSeries::first_on_or_after(const Date& d) const {
  return std::size_t(std::lower_bound(dates.begin(), dates.end(), d) -
                     dates.begin());
}

std::optional<std::size_t> PriceSeries::last_on_or_before(const Date& d) const {
  auto it = std::upper_bound(dates.begin(), dates.end(), d);
  if (it == dates.begin()) return std::nullopt;
  return std::size_t(it - dates.begin()) - 1;
}

DiffSeries daily_returns(const PriceSeries& series) {
  if (series.size() < 2)
    throw std::invalid_argument("daily_returns needs at least 2 closes");
  DiffSeries out;
  out.offset = 1;
  out.values.reserve(series.size() - 1);
  for (std::size_t k = 1; k < series.size(); ++k)
    out.values.push_back(series.close[k] - series.close[k - 1]);
  return out;
}

DiffSeries acceleration_series(const PriceSeries& series) {
  if (series.size() < 3)
    throw std::invalid_argument("acceleration_series needs at least 3 closes");
  DiffSeries out;
  out.offset = 2;
  out.values.reserve(series.size() - 2);
  for (std::size_t k = 2; k < series.size(); ++k)
    out.values.push_back(series.close[k] - 2.0 * series.close[k - 1] +
                         series.close[k - 2]);
  return out;
}

}  // namespace trendlens
