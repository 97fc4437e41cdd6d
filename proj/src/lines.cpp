#include "trendlens/lines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trendlens {

namespace {

// Largest-magnitude slope/exponent comparison for the band test.
bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::vector<ExtremumPoint> find_local_extrema(const PriceSeries& series,
                                              std::size_t window) {
  if (window < 1) throw std::invalid_argument("extrema window must be >= 1");
  if (series.size() <= 2 * window)
    throw std::invalid_argument("series shorter than the extrema window");

  std::vector<ExtremumPoint> out;
  const std::size_t n = series.size();
  for (std::size_t k = window; k + window < n; ++k) {
    const double c = series.close[k];
    bool is_max = true, is_min = true;
    for (std::size_t j = k - window; j <= k + window && (is_max || is_min); ++j) {
      if (j == k) continue;
      const double cj = series.close[j];
      // Ties go to the earliest ordinal: an equal close earlier in the
      // window disqualifies this one, an equal close later does not.
      if (j < k) {
        if (cj >= c) is_max = false;
        if (cj <= c) is_min = false;
      } else {
        if (cj > c) is_max = false;
        if (cj < c) is_min = false;
      }
    }
    if (is_max)
      out.push_back({std::int64_t(k), c, ExtremumKind::Maximum, {}});
    else if (is_min)
      out.push_back({std::int64_t(k), c, ExtremumKind::Minimum, {}});
  }
  return out;
}

TrendLine line_through_extrema(const ExtremumPoint& a, const ExtremumPoint& b,
                               LineGeometry geometry) {
  if (a.kind != b.kind)
    throw std::invalid_argument("line anchors must be extrema of the same kind");
  if (a.ordinal == b.ordinal)
    throw std::invalid_argument("line anchors must have distinct ordinals");

  const ExtremumPoint& lo = a.ordinal < b.ordinal ? a : b;
  const ExtremumPoint& hi = a.ordinal < b.ordinal ? b : a;

  TrendLine line;
  line.geometry = geometry;
  line.role = lo.kind == ExtremumKind::Minimum ? LineRole::Supporting
                                               : LineRole::Resisting;
  line.anchor_a = lo;
  line.anchor_b = hi;
  if (geometry == LineGeometry::Exponential) {
    line.model = exponential_line_through_two_points({lo.ordinal, lo.price},
                                                     {hi.ordinal, hi.price});
  } else {
    double slope = (hi.price - lo.price) / double(hi.ordinal - lo.ordinal);
    line.model = make_linear(lo.ordinal, lo.price, slope);
  }
  return line;
}

std::vector<LineEvent> line_events(const PriceSeries& series,
                                   const TrendLine& line, double band,
                                   int confirm) {
  if (band < 0) throw std::invalid_argument("band must be >= 0");
  if (confirm < 1) throw std::invalid_argument("confirm must be >= 1");

  std::vector<LineEvent> events;
  int prevailing = 0;  // +1 above, -1 below, 0 unknown; flips on confirmed crosses
  int last_side = 0;   // side of the most recent day outside the tube
  std::int64_t below_start = 0, above_start = 0;
  int below_run = 0, above_run = 0;
  std::int64_t tube_start = -1;
  int tube_entry_side = 0;

  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::int64_t d = std::int64_t(k);
    const double level = line.value_at(d);
    const double lo = level * (1.0 - band);
    const double hi = level * (1.0 + band);
    const double c = series.close[k];
    const int pos = c < lo ? -1 : (c > hi ? +1 : 0);

    if (pos == 0) {
      if (tube_start < 0) {
        tube_start = d;
        tube_entry_side = last_side;
      }
      below_run = above_run = 0;
      continue;
    }
    last_side = pos;

    if (tube_start >= 0) {
      if (tube_entry_side != 0 && pos == tube_entry_side)
        events.push_back({tube_start, LineEventKind::Test});
      tube_start = -1;
    }

    if (pos < 0) {
      if (below_run == 0) below_start = d;
      ++below_run;
      above_run = 0;
      if (prevailing == 0) prevailing = -1;  // no crossing without a prior side
      if (below_run >= confirm && prevailing > 0) {
        events.push_back({below_start, LineEventKind::CrossDown});
        prevailing = -1;
      }
    } else {
      if (above_run == 0) above_start = d;
      ++above_run;
      below_run = 0;
      if (prevailing == 0) prevailing = +1;
      if (above_run >= confirm && prevailing < 0) {
        events.push_back({above_start, LineEventKind::CrossUp});
        prevailing = +1;
      }
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const LineEvent& a, const LineEvent& b) {
                     return a.ordinal < b.ordinal;
                   });
  return events;
}

LineRole role_after_cross(const TrendLine& line, const LineEvent& event) {
  if (event.kind == LineEventKind::Test)
    throw std::invalid_argument("test events do not change a line's role");
  if (line.role == LineRole::Supporting && event.kind == LineEventKind::CrossDown)
    return LineRole::Resisting;
  if (line.role == LineRole::Resisting && event.kind == LineEventKind::CrossUp)
    return LineRole::Supporting;
  return line.role;
}

bool lines_form_band(const TrendLine& a, const TrendLine& b, double rel_tol) {
  if (a.geometry != b.geometry) return false;
  if (a.geometry == LineGeometry::Exponential) {
    const auto& ea = std::get<ExponentialTrend>(a.model.shape);
    const auto& eb = std::get<ExponentialTrend>(b.model.shape);
    return close_rel(ea.growth, eb.growth, rel_tol);
  }
  const auto& la = std::get<LinearTrend>(a.model.shape);
  const auto& lb = std::get<LinearTrend>(b.model.shape);
  return close_rel(la.slope, lb.slope, rel_tol);
}

double band_midline_value(const TrendLine& a, const TrendLine& b,
                          std::int64_t ordinal) {
  return 0.5 * (a.value_at(ordinal) + b.value_at(ordinal));
}

}  // namespace trendlens
