#include "trendlens/trend_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace trendlens {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v), acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / double(v.size());
}

// Centered moving average with an odd window; out[i] pairs with in[i + m/2].
std::vector<double> smooth(const std::vector<double>& in, std::size_t m) {
  if (m <= 1 || in.size() < m) return in;
  std::vector<double> out;
  out.reserve(in.size() - m + 1);
  double acc = std::accumulate(in.begin(), in.begin() + m, 0.0);
  out.push_back(acc / double(m));
  for (std::size_t i = m; i < in.size(); ++i) {
    acc += in[i] - in[i - m];
    out.push_back(acc / double(m));
  }
  return out;
}

}  // namespace

double CyclicTrend::period() const { return kTwoPi / frequency; }

std::string family_name(TrendFamily f) {
  switch (f) {
    case TrendFamily::Linear: return "linear";
    case TrendFamily::Parabolic: return "parabolic";
    case TrendFamily::Exponential: return "exponential";
    case TrendFamily::Cyclic: return "cyclic";
  }
  return "unknown";
}

std::size_t TrendModel::parameter_count() const {
  switch (family()) {
    case TrendFamily::Linear: return 2;
    case TrendFamily::Parabolic: return 3;
    case TrendFamily::Exponential: return 2;
    case TrendFamily::Cyclic: return 5;
  }
  return 0;
}

double TrendModel::value(double tau) const {
  return std::visit(
      [tau](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearTrend>) {
          return s.level + s.slope * tau;
        } else if constexpr (std::is_same_v<T, ParabolicTrend>) {
          return s.level + s.slope * tau + 0.5 * s.accel * tau * tau;
        } else if constexpr (std::is_same_v<T, ExponentialTrend>) {
          return s.scale * std::exp(s.growth * tau);
        } else {
          return s.base + s.drift * tau +
                 s.amplitude * std::sin(s.frequency * tau + s.phase);
        }
      },
      shape);
}

double TrendModel::speed(double tau) const {
  return std::visit(
      [tau](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearTrend>) {
          return s.slope;
        } else if constexpr (std::is_same_v<T, ParabolicTrend>) {
          return s.slope + s.accel * tau;
        } else if constexpr (std::is_same_v<T, ExponentialTrend>) {
          return s.growth * s.scale * std::exp(s.growth * tau);
        } else {
          return s.drift + s.frequency * s.amplitude *
                               std::cos(s.frequency * tau + s.phase);
        }
      },
      shape);
}

double TrendModel::acceleration(double tau) const {
  return std::visit(
      [tau](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearTrend>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ParabolicTrend>) {
          return s.accel;
        } else if constexpr (std::is_same_v<T, ExponentialTrend>) {
          return s.growth * s.growth * s.scale * std::exp(s.growth * tau);
        } else {
          // Base and drift contribute nothing to the second derivative.
          return -s.frequency * s.frequency * s.amplitude *
                 std::sin(s.frequency * tau + s.phase);
        }
      },
      shape);
}

TrendModel make_linear(std::int64_t origin, double level, double slope) {
  return TrendModel{origin, LinearTrend{level, slope}};
}

TrendModel make_parabolic(std::int64_t origin, double level, double slope,
                          double accel) {
  return TrendModel{origin, ParabolicTrend{level, slope, accel}};
}

TrendModel make_exponential(std::int64_t origin, double scale, double growth) {
  if (!(scale > 0.0))
    throw std::invalid_argument("exponential trend needs scale > 0");
  return TrendModel{origin, ExponentialTrend{scale, growth}};
}

TrendModel make_cyclic(std::int64_t origin, double base, double drift,
                       double amplitude, double frequency, double phase) {
  if (amplitude < 0.0)
    throw std::invalid_argument("cyclic trend needs amplitude >= 0");
  if (!(frequency > 0.0))
    throw std::invalid_argument("cyclic trend needs frequency > 0");
  return TrendModel{origin, CyclicTrend{base, drift, amplitude, frequency, phase}};
}

std::vector<TrendFamily> classify_signature(const DiffSeries& accel,
                                            const PriceSeries& prices,
                                            double tolerance) {
  if (accel.values.empty())
    throw std::invalid_argument("classify_signature needs a non-empty series");
  if (prices.size() < accel.values.size() + accel.offset)
    throw std::invalid_argument("acceleration series longer than its prices");

  const std::vector<double>& a = accel.values;
  const std::size_t n = a.size();
  const double price_scale = mean(prices.close);
  const double floor_abs = 1e-9 * price_scale;

  std::vector<TrendFamily> out;

  // Speeds over the same span; the series the acceleration differenced.
  std::vector<double> v;
  v.reserve(prices.size() - 1);
  for (std::size_t k = 1; k < prices.size(); ++k)
    v.push_back(prices.close[k] - prices.close[k - 1]);

  // Linear: constant speed once differencing noise is discounted. For iid
  // noise var(speed) = 2*sigma^2 and var(accel) = 6*sigma^2, so the
  // structural part of the speed variance is var(v) - var(a)/3.
  {
    double structural = std::max(0.0, variance(v) - variance(a) / 3.0);
    if (std::sqrt(structural) <= tolerance * std::abs(mean(v)) + floor_abs)
      out.push_back(TrendFamily::Linear);
  }

  // The remaining signatures read the smoothed acceleration against the
  // price level at each window's center.
  std::size_t m = std::min<std::size_t>(63, std::max<std::size_t>(1, n / 8));
  if (m % 2 == 0) --m;
  const std::vector<double> as = smooth(a, m);
  const std::size_t half = a.size() == as.size() ? 0 : m / 2;
  auto center_close = [&](std::size_t i) {
    return prices.close[i + half + accel.offset - 1];
  };

  const double a_mean = mean(as);
  const double a_sd = std::sqrt(variance(as));

  // Parabolic: near-constant nonzero acceleration.
  if (std::abs(a_mean) > 1e-7 * price_scale &&
      a_sd <= tolerance * std::abs(a_mean) + floor_abs)
    out.push_back(TrendFamily::Parabolic);

  // Exponential: acceleration / price stable and positive.
  {
    std::vector<double> ratio(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) ratio[i] = as[i] / center_close(i);
    double rm = mean(ratio), rs = std::sqrt(variance(ratio));
    if (rm > 1e-12 && rs <= tolerance * rm + 1e-15)
      out.push_back(TrendFamily::Exponential);
  }

  // Cyclic: acceleration oscillates in antiphase with the detrended price.
  {
    // Detrend closes with ordinary least squares over the whole window.
    const std::size_t np = prices.size();
    double tm = 0.5 * double(np - 1), stt = 0, sty = 0, ym = mean(prices.close);
    for (std::size_t k = 0; k < np; ++k) {
      double dt = double(k) - tm;
      stt += dt * dt;
      sty += dt * (prices.close[k] - ym);
    }
    double beta_trend = stt > 0 ? sty / stt : 0.0;
    auto detrended = [&](std::size_t k) {
      return prices.close[k] - (ym + beta_trend * (double(k) - tm));
    };

    double sxx = 0, sxy = 0, xm = 0, am2 = a_mean;
    std::vector<double> x(as.size());
    for (std::size_t i = 0; i < as.size(); ++i)
      x[i] = detrended(i + half + accel.offset - 1);
    xm = mean(x);
    for (std::size_t i = 0; i < as.size(); ++i) {
      sxx += (x[i] - xm) * (x[i] - xm);
      sxy += (x[i] - xm) * (as[i] - am2);
    }
    double slope = sxx > 0 ? sxy / sxx : 0.0;
    double alpha = am2 - slope * xm;

    double a_rms = 0, resid_rms = 0;
    int sign_changes = 0;
    int prev_sign = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
      a_rms += as[i] * as[i];
      double r = as[i] - (alpha + slope * x[i]);
      resid_rms += r * r;
      double dev = as[i] - am2;
      int s = dev > 0 ? 1 : (dev < 0 ? -1 : 0);
      if (s != 0 && prev_sign != 0 && s != prev_sign) ++sign_changes;
      if (s != 0) prev_sign = s;
    }
    a_rms = std::sqrt(a_rms / double(as.size()));
    resid_rms = std::sqrt(resid_rms / double(as.size()));

    if (slope < 0.0 && a_rms > floor_abs && sign_changes >= 2 &&
        resid_rms <= tolerance * a_rms + floor_abs &&
        std::abs(alpha) <= tolerance * a_rms + floor_abs)
      out.push_back(TrendFamily::Cyclic);
  }

  return out;
}

}  // namespace trendlens
