#pragma once

#include <optional>
#include <vector>

#include "trendlens/lines.hpp"

namespace trendlens {

enum class FormationKind { SHS, RSHS };
enum class PriceDirection { Fall, Rise };

/// Shoulder-head-shoulder (three maxima, head strictly highest) or its
/// reverse (three minima, head strictly lowest).
struct Formation {
  FormationKind kind = FormationKind::SHS;
  ExtremumPoint left, head, right;  // ordered by ordinal
};

struct MaturationEvent {
  LineEvent event;           // the confirmed neckline cross
  PriceDirection direction;  // Fall for SHS, Rise for RSHS
};

struct ForecastLevels {
  double maturation_level = 0;  // neckline value at the right shoulder
  std::optional<double> base_level;
  double envelope_accel = 0;  // constant acceleration of the envelope, $/day^2
  TrendModel envelope;        // parabola through the three extrema
  // Expected level once the move completes; the base when one is supplied.
  std::optional<double> target_level;
  PriceDirection direction = PriceDirection::Fall;
};

/// Every consecutive same-kind extremum triple whose middle member is the
/// strict extreme. Overlapping formations are kept.
std::vector<Formation> detect_formations(
    const std::vector<ExtremumPoint>& extrema);

/// Parabola through the three extrema: open-down for SHS, open-up for RSHS.
TrendModel enveloping_parabola(const Formation& f);

/// Neckline: line through the dips flanking the head (SHS; peaks for RSHS),
/// read off the raw closes inside the shoulder-head gaps. Throws
/// std::invalid_argument when a gap has no interior days.
TrendLine maturation_line(const Formation& f, const PriceSeries& series);

/// First confirmed neckline cross after the right shoulder, in the
/// formation's own direction; nullopt while the formation has not matured.
std::optional<MaturationEvent> maturation_event(const PriceSeries& series,
                                                const Formation& f,
                                                double band, int confirm);

/// Forecast record for a formation whose maturation level is known.
ForecastLevels forecast_levels(const Formation& f, double maturation_level,
                               std::optional<double> base_level);

}  // namespace trendlens
