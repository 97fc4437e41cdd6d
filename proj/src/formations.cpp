#include "trendlens/formations.hpp"

#include <algorithm>
#include <stdexcept>

namespace trendlens {

namespace {

// Deepest close strictly between two ordinals, as an extremum of the given
// kind. Ties go to the earliest ordinal.
ExtremumPoint interior_extreme(const PriceSeries& series, std::int64_t lo,
                               std::int64_t hi, ExtremumKind kind) {
  if (hi - lo < 2)
    throw std::invalid_argument(
        "incomplete formation: no interior days between extrema");
  std::int64_t best = lo + 1;
  for (std::int64_t k = lo + 2; k < hi; ++k) {
    const double c = series.close[std::size_t(k)];
    const double b = series.close[std::size_t(best)];
    if (kind == ExtremumKind::Minimum ? c < b : c > b) best = k;
  }
  return {best, series.close[std::size_t(best)], kind, {}};
}

}  // namespace

std::vector<Formation> detect_formations(
    const std::vector<ExtremumPoint>& extrema) {
  std::vector<Formation> out;
  for (ExtremumKind kind : {ExtremumKind::Maximum, ExtremumKind::Minimum}) {
    std::vector<const ExtremumPoint*> same;
    for (const ExtremumPoint& e : extrema)
      if (e.kind == kind) same.push_back(&e);
    for (std::size_t i = 1; i + 1 < same.size(); ++i) {
      const ExtremumPoint& l = *same[i - 1];
      const ExtremumPoint& h = *same[i];
      const ExtremumPoint& r = *same[i + 1];
      const bool head_extreme =
          kind == ExtremumKind::Maximum
              ? (h.price > l.price && h.price > r.price)
              : (h.price < l.price && h.price < r.price);
      if (!head_extreme) continue;
      out.push_back({kind == ExtremumKind::Maximum ? FormationKind::SHS
                                                   : FormationKind::RSHS,
                     l, h, r});
    }
  }
  std::sort(out.begin(), out.end(), [](const Formation& a, const Formation& b) {
    if (a.left.ordinal != b.left.ordinal) return a.left.ordinal < b.left.ordinal;
    return a.head.ordinal < b.head.ordinal;
  });
  return out;
}

TrendModel enveloping_parabola(const Formation& f) {
  TrendModel m = parabola_through_three_points({f.left.ordinal, f.left.price},
                                               {f.head.ordinal, f.head.price},
                                               {f.right.ordinal, f.right.price});
  const double accel = std::get<ParabolicTrend>(m.shape).accel;
  // A strict middle extreme forces the curvature sign; anything else means
  // the formation was constructed by hand with inconsistent extrema.
  if (f.kind == FormationKind::SHS ? accel >= 0 : accel <= 0)
    throw std::invalid_argument("formation extrema violate the curvature sign");
  return m;
}

TrendLine maturation_line(const Formation& f, const PriceSeries& series) {
  if (f.left.ordinal < 0 || f.right.ordinal >= std::int64_t(series.size()))
    throw std::invalid_argument("formation lies outside the series");
  const ExtremumKind flank_kind = f.kind == FormationKind::SHS
                                      ? ExtremumKind::Minimum
                                      : ExtremumKind::Maximum;
  ExtremumPoint a =
      interior_extreme(series, f.left.ordinal, f.head.ordinal, flank_kind);
  ExtremumPoint b =
      interior_extreme(series, f.head.ordinal, f.right.ordinal, flank_kind);
  TrendLine line = line_through_extrema(a, b, LineGeometry::Linear);
  line.label = "neckline";
  return line;
}

std::optional<MaturationEvent> maturation_event(const PriceSeries& series,
                                                const Formation& f,
                                                double band, int confirm) {
  TrendLine neck;
  try {
    neck = maturation_line(f, series);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // no neckline, nothing to mature through
  }
  const LineEventKind wanted = f.kind == FormationKind::SHS
                                   ? LineEventKind::CrossDown
                                   : LineEventKind::CrossUp;
  for (const LineEvent& ev : line_events(series, neck, band, confirm)) {
    if (ev.ordinal <= f.right.ordinal || ev.kind != wanted) continue;
    return MaturationEvent{ev, f.kind == FormationKind::SHS
                                   ? PriceDirection::Fall
                                   : PriceDirection::Rise};
  }
  return std::nullopt;
}

ForecastLevels forecast_levels(const Formation& f, double maturation_level,
                               std::optional<double> base_level) {
  ForecastLevels out;
  out.maturation_level = maturation_level;
  out.base_level = base_level;
  out.envelope = enveloping_parabola(f);
  out.envelope_accel = std::get<ParabolicTrend>(out.envelope.shape).accel;
  out.direction = f.kind == FormationKind::SHS ? PriceDirection::Fall
                                               : PriceDirection::Rise;
  out.target_level = base_level;
  return out;
}

}  // namespace trendlens
