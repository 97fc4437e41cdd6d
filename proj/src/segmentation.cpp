#include "trendlens/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trendlens {

namespace {

struct BestFit {
  TrendModel model;
  double r_squared = 1.0;
  double residual_rms = 0.0;
};

bool constant_segment(const PriceSeries& series, Segment seg) {
  double c0 = series.close[std::size_t(seg.first)];
  for (std::int64_t k = seg.first + 1; k <= seg.last; ++k)
    if (series.close[std::size_t(k)] != c0) return false;
  return true;
}

// All four families compete on price-domain R^2; within family_tie_margin of
// the best score the family with fewer parameters wins (equal counts: higher
// R^2, then detection order Linear/Parabolic/Exponential/Cyclic).
BestFit best_family_fit(const PriceSeries& series, Segment seg,
                        const Config& cfg) {
  if (constant_segment(series, seg)) {
    return {make_linear(seg.first, series.close[std::size_t(seg.first)], 0.0),
            1.0, 0.0};
  }

  std::vector<FitResult> fits;
  fits.push_back(fit_linear(series, seg));
  if (seg.length() >= 3) fits.push_back(fit_parabola(series, seg));
  fits.push_back(fit_exponential(series, seg));
  if (seg.length() >= 8) {
    PeriodGrid grid = cfg.period_grid;
    grid.min_period = std::max(4.0, grid.min_period);
    grid.max_period = std::min(2.0 * double(seg.length()), grid.max_period);
    if (grid.min_period <= grid.max_period)
      fits.push_back(fit_sinusoid(series, seg, grid));
  }

  double best_r2 = fits.front().r_squared;
  for (const FitResult& f : fits) best_r2 = std::max(best_r2, f.r_squared);

  const FitResult* winner = nullptr;
  for (const FitResult& f : fits) {
    if (f.r_squared < best_r2 - cfg.family_tie_margin) continue;
    if (!winner) {
      winner = &f;
      continue;
    }
    const std::size_t pw = winner->model.parameter_count();
    const std::size_t pf = f.model.parameter_count();
    if (pf < pw || (pf == pw && f.r_squared > winner->r_squared)) winner = &f;
  }
  return {winner->model, winner->r_squared, winner->residual_rms};
}

// State of one bounding line (supporting or resisting) while an epoch grows.
// The line hangs off the epoch's first extremum of the side's kind and
// follows the most recent one, so its slope settles as the span grows while
// its level stays calibrated to fresh prices.
struct SideState {
  ExtremumKind kind;
  std::optional<ExtremumPoint> first, latest;
  std::optional<TrendLine> line;
  std::int64_t run_start = 0;
  int run = 0;
};

}  // namespace

std::vector<Epoch> segment_epochs(const PriceSeries& series,
                                  const Config& cfg) {
  cfg.validate();
  const std::size_t n = series.size();
  if (n < cfg.min_epoch_length)
    throw std::invalid_argument("series shorter than the minimum epoch length");

  const std::size_t w = cfg.extrema_window;
  std::vector<ExtremumPoint> extrema;
  if (n > 2 * w) extrema = find_local_extrema(series, w);

  const double band = cfg.crossing_band;
  const int confirm = cfg.confirm_days;

  auto try_adopt = [&](SideState& s, const ExtremumPoint& e) {
    if (!s.first) {
      s.first = e;
      s.latest = e;
      return;
    }
    if (e.ordinal <= s.first->ordinal) return;
    s.latest = e;
    s.line = line_through_extrema(*s.first, e, LineGeometry::Exponential);
    s.run = 0;
  };

  struct Span {
    Segment seg;
    std::optional<TrendLine> support, resist;
  };
  std::vector<Span> spans;

  std::size_t pos = 0;
  while (pos < n) {
    const std::int64_t start = std::int64_t(pos);
    SideState sup{ExtremumKind::Minimum, {}, {}, {}, 0, 0};
    SideState res{ExtremumKind::Maximum, {}, {}, {}, 0, 0};

    auto next_ex = std::lower_bound(
        extrema.begin(), extrema.end(), start,
        [](const ExtremumPoint& e, std::int64_t v) { return e.ordinal < v; });

    std::optional<std::int64_t> cut;
    for (std::int64_t d = start; d < std::int64_t(n) && !cut; ++d) {
      // Extrema become visible once their window is complete.
      while (next_ex != extrema.end() &&
             next_ex->ordinal + std::int64_t(w) <= d) {
        try_adopt(next_ex->kind == ExtremumKind::Minimum ? sup : res, *next_ex);
        ++next_ex;
      }

      for (SideState* side : {&sup, &res}) {
        SideState& s = *side;
        if (!s.line) continue;
        const double lv = s.line->value_at(d);
        const double c = series.close[std::size_t(d)];
        const bool breach = s.kind == ExtremumKind::Minimum
                                ? c < lv * (1.0 - band)
                                : c > lv * (1.0 + band);
        if (!breach) {
          s.run = 0;
          continue;
        }
        if (s.run == 0) s.run_start = d;
        if (++s.run < confirm) continue;

        const std::int64_t k0 = s.run_start;
        if (k0 > start && k0 - start >= std::int64_t(cfg.min_epoch_length)) {
          cut = k0;  // confirmed cross ends the epoch at the breach day
          break;
        }
        // Premature cross: the line did not bound a real trend. Drop it and
        // rebuild from whatever extrema follow.
        s.first.reset();
        s.latest.reset();
        s.line.reset();
        s.run = 0;
      }
    }

    const std::int64_t end = cut ? *cut - 1 : std::int64_t(n) - 1;
    spans.push_back({{start, end}, sup.line, res.line});
    pos = std::size_t(end) + 1;
  }

  // A short trailing remainder has no qualifying trend of its own; report it
  // as the previous epoch's transition gap.
  std::optional<Segment> trailing_gap;
  if (spans.size() > 1 &&
      spans.back().seg.length() < std::int64_t(cfg.min_epoch_length)) {
    trailing_gap = spans.back().seg;
    spans.pop_back();
  }

  std::vector<Epoch> epochs;
  epochs.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& sp = spans[i];
    BestFit fit = best_family_fit(series, sp.seg, cfg);
    Epoch e;
    e.index = int(i) + 1;
    e.start = sp.seg.first;
    e.end = sp.seg.last;
    e.model = fit.model;
    e.r_squared = fit.r_squared;
    e.residual_rms = fit.residual_rms;
    e.support = sp.support;
    e.resist = sp.resist;
    e.residuals.reserve(std::size_t(sp.seg.length()));
    for (std::int64_t k = sp.seg.first; k <= sp.seg.last; ++k)
      e.residuals.push_back(series.close[std::size_t(k)] - e.model.value_at(k));
    if (i + 1 == spans.size() && trailing_gap) e.transition_gap = trailing_gap;
    epochs.push_back(std::move(e));
  }
  return epochs;
}

std::vector<std::vector<double>> decompose(const PriceSeries& series,
                                           const std::vector<Epoch>& epochs) {
  std::vector<std::vector<double>> out;
  out.reserve(epochs.size());
  for (const Epoch& e : epochs) {
    if (e.start < 0 || e.end >= std::int64_t(series.size()) || e.end < e.start)
      throw std::out_of_range("epoch does not fit the series");
    std::vector<double> res;
    res.reserve(std::size_t(e.end - e.start + 1));
    for (std::int64_t k = e.start; k <= e.end; ++k)
      res.push_back(series.close[std::size_t(k)] - e.model.value_at(k));
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace trendlens
