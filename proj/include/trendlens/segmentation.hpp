#pragma once

#include <optional>
#include <vector>

#include "trendlens/config.hpp"
#include "trendlens/lines.hpp"

namespace trendlens {

/// One epoch of the piecewise decomposition: a contiguous run of trading
/// days governed by a single trend, with the bounding lines that delimited
/// it and the residual noise around the trend.
struct Epoch {
  int index = 1;  // 1-based, chronological
  std::int64_t start = 0, end = 0;  // inclusive ordinals, end > start
  TrendModel model;                 // best family; tau = ordinal - start
  double r_squared = 0;
  double residual_rms = 0;
  std::optional<TrendLine> support, resist;
  std::vector<double> residuals;  // close - model, one per day in [start, end]
  // Days between this epoch and the next that belong to neither
  // ([end+1, next.start-1], inclusive).
  std::optional<Segment> transition_gap;
};

/// Splits the series into epochs. An epoch runs from the current position
/// until a confirmed cross of one of its bounding lines; the supporting line
/// hangs off the first and the most recent qualifying minima (resisting:
/// maxima) and follows the new extrema as the epoch develops. Crosses that
/// arrive before min_epoch_length invalidate the crossed line instead of
/// closing the epoch. Each closed epoch gets the best-R^2 family of the
/// four, with ties inside family_tie_margin going to fewer parameters.
/// A trailing remainder shorter than min_epoch_length is reported as the
/// last epoch's transition gap.
std::vector<Epoch> segment_epochs(const PriceSeries& series,
                                  const Config& config);

/// Residuals close[k] - model per epoch; the reconstruction identity
/// close = model + residual holds exactly. Throws std::out_of_range when an
/// epoch does not fit the series.
std::vector<std::vector<double>> decompose(const PriceSeries& series,
                                           const std::vector<Epoch>& epochs);

}  // namespace trendlens
