#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "trendlens/series.hpp"

namespace trendlens {

enum class TrendFamily { Linear, Parabolic, Exponential, Cyclic };

std::string family_name(TrendFamily f);

// X(tau) = level + slope*tau
struct LinearTrend {
  double level = 0;  // $
  double slope = 0;  // $/day
};

// X(tau) = level + slope*tau + (accel/2)*tau^2.
// `accel` is the constant second derivative; the tau^2 coefficient is accel/2.
struct ParabolicTrend {
  double level = 0;  // $
  double slope = 0;  // $/day
  double accel = 0;  // $/day^2
};

// X(tau) = scale * exp(growth*tau), scale > 0
struct ExponentialTrend {
  double scale = 1;   // $
  double growth = 0;  // 1/day
};

// X(tau) = base + drift*tau + amplitude*sin(frequency*tau + phase).
// base = drift = 0 gives the plain sinusoid; the general form is needed for
// channels that sit on a level or drift downward.
struct CyclicTrend {
  double base = 0;       // $
  double drift = 0;      // $/day
  double amplitude = 0;  // $, >= 0
  double frequency = 1;  // rad/day, > 0
  double phase = 0;      // rad, in (-pi, pi]

  double period() const;  // days, 2*pi/frequency
};

/// One parametric trend with its epoch-local time origin: tau = ordinal - origin.
struct TrendModel {
  std::int64_t origin = 0;
  std::variant<LinearTrend, ParabolicTrend, ExponentialTrend, CyclicTrend>
      shape = LinearTrend{};

  TrendFamily family() const { return TrendFamily(shape.index()); }
  std::size_t parameter_count() const;

  double value(double tau) const;
  double speed(double tau) const;         // $/day
  double acceleration(double tau) const;  // $/day^2

  double tau_of(std::int64_t ordinal) const {
    return double(ordinal - origin);
  }
  double value_at(std::int64_t ordinal) const { return value(tau_of(ordinal)); }
};

// Validating constructors (throw std::invalid_argument on bad parameters).
TrendModel make_linear(std::int64_t origin, double level, double slope);
TrendModel make_parabolic(std::int64_t origin, double level, double slope,
                          double accel);
TrendModel make_exponential(std::int64_t origin, double scale, double growth);
TrendModel make_cyclic(std::int64_t origin, double base, double drift,
                       double amplitude, double frequency, double phase);

/// Families whose kinematic signature is consistent with the observed
/// acceleration series, judged at the given relative tolerance:
///   - Linear: speed is constant once the differencing noise is discounted.
///   - Parabolic: acceleration is a stable nonzero constant.
///   - Exponential: acceleration tracks the price level with a stable
///     positive ratio.
///   - Cyclic: acceleration oscillates in antiphase with the detrended price.
/// Multiple hypotheses (or none) may come back.
std::vector<TrendFamily> classify_signature(const DiffSeries& accel,
                                            const PriceSeries& prices,
                                            double tolerance = 0.15);

}  // namespace trendlens
