#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trendlens/fitting.hpp"

namespace trendlens {

enum class ExtremumKind { Maximum, Minimum };

struct ExtremumPoint {
  std::int64_t ordinal = 0;
  double price = 0;
  ExtremumKind kind = ExtremumKind::Maximum;
  std::string label;  // optional annotation
};

enum class LineGeometry { Linear, Exponential };
enum class LineRole { Supporting, Resisting };

/// Supporting or resisting line anchored at two same-kind extrema. The
/// underlying model passes through both anchors exactly.
struct TrendLine {
  LineGeometry geometry = LineGeometry::Linear;
  LineRole role = LineRole::Supporting;
  ExtremumPoint anchor_a, anchor_b;  // anchor_a.ordinal < anchor_b.ordinal
  TrendModel model;                  // Linear or Exponential
  std::string label;

  double value_at(std::int64_t ordinal) const { return model.value_at(ordinal); }
};

enum class LineEventKind { CrossUp, CrossDown, Test };

struct LineEvent {
  std::int64_t ordinal = 0;
  LineEventKind kind = LineEventKind::Test;
};

/// All ordinals whose close is the extremum of its kind over the centered
/// 2w+1-day window. Endpoints (first/last w days) are excluded; ties inside
/// a window go to the earliest ordinal; alternation is not enforced.
std::vector<ExtremumPoint> find_local_extrema(const PriceSeries& series,
                                              std::size_t window);

/// Line through two same-kind extrema. Minima give a supporting line,
/// maxima a resisting one.
TrendLine line_through_extrema(const ExtremumPoint& a, const ExtremumPoint& b,
                               LineGeometry geometry);

/// Crossing and test events of `line` over the whole series.
/// A cross_down at ordinal k requires close < line*(1-band) for `confirm`
/// consecutive days starting at k, with the prevailing side above
/// (symmetrically cross_up). A test is a visit to the +-band tube that exits
/// on the side it entered from. Cross events strictly alternate.
std::vector<LineEvent> line_events(const PriceSeries& series,
                                   const TrendLine& line, double band,
                                   int confirm);

/// Role reversal: a supporting line crossed down resists afterwards, a
/// resisting line crossed over supports. Throws std::invalid_argument for
/// test events.
LineRole role_after_cross(const TrendLine& line, const LineEvent& event);

/// Two same-geometry lines whose slopes (or growth exponents) agree within
/// rel_tol form a band.
bool lines_form_band(const TrendLine& a, const TrendLine& b,
                     double rel_tol = 0.10);

/// Pointwise average of two lines; the mid-line of a band.
double band_midline_value(const TrendLine& a, const TrendLine& b,
                          std::int64_t ordinal);

}  // namespace trendlens
