#pragma once

#include <cstdint>
#include <span>

#include "trendlens/trend_models.hpp"

namespace trendlens {

/// Inclusive range of trading-day ordinals.
struct Segment {
  std::int64_t first = 0;
  std::int64_t last = 0;

  std::int64_t length() const { return last - first + 1; }
};

struct PricePoint {
  std::int64_t ordinal = 0;
  double price = 0;
};

/// Candidate periods (days) for the sinusoid fit, min..max inclusive.
struct PeriodGrid {
  double min_period = 16;
  double max_period = 1000;
  double step = 1;
};

struct FitResult {
  TrendModel model;
  double r_squared = 0;  // price-domain, <= 1, negative for terrible fits
  Segment segment;
  double residual_rms = 0;  // $
  // Cyclic fit whose best amplitude is ~0; the recovered period carries no
  // information (constant input, say).
  bool degenerate_amplitude = false;
};

/// 1 - SS_res/SS_tot about the observed mean. Throws std::domain_error when
/// the observed values have zero variance, std::invalid_argument on length
/// mismatch or length < 2.
double r_squared(std::span<const double> observed,
                 std::span<const double> predicted);

FitResult fit_linear(const PriceSeries& series, Segment segment);
FitResult fit_parabola(const PriceSeries& series, Segment segment);
// Least squares on (tau, ln close); R^2 reported in the price domain so the
// score is comparable with the other families.
FitResult fit_exponential(const PriceSeries& series, Segment segment);
// For each period P in the grid solves the linear least squares for
// B + D*tau + a*sin(2*pi*tau/P) + b*cos(2*pi*tau/P) and keeps the best
// R^2 (ties: smallest period). amplitude = hypot(a, b), phase = atan2(b, a).
FitResult fit_sinusoid(const PriceSeries& series, Segment segment,
                       const PeriodGrid& grid);

// Exponential line through two (ordinal, price) points:
// growth = ln(p2/p1)/(o2-o1), anchored exactly at both. origin = o1.
TrendModel exponential_line_through_two_points(PricePoint p1, PricePoint p2);

// Unique quadratic interpolant through three points, origin at the earliest
// ordinal. Throws std::invalid_argument on duplicate ordinals.
TrendModel parabola_through_three_points(PricePoint p1, PricePoint p2,
                                         PricePoint p3);

}  // namespace trendlens
