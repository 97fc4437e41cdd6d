#include "trendlens/fitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trendlens {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_segment(const PriceSeries& series, Segment seg,
                   std::int64_t min_length, const char* op) {
  if (seg.first < 0 || seg.last >= std::int64_t(series.size()) ||
      seg.last < seg.first)
    throw std::invalid_argument(std::string(op) + ": segment out of range");
  if (seg.length() < min_length)
    throw std::invalid_argument(std::string(op) + ": segment needs at least " +
                                std::to_string(min_length) + " days");
}

// R^2, residual RMS and the exact-fit special case shared by all fitters.
FitResult finish(const PriceSeries& series, Segment seg, TrendModel model) {
  const std::size_t n = std::size_t(seg.length());
  double ss_res = 0, ss_tot = 0, mean = 0, scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = series.close[std::size_t(seg.first) + i];
    mean += y;
    scale += std::abs(y);
  }
  mean /= double(n);
  scale /= double(n);
  for (std::size_t i = 0; i < n; ++i) {
    double y = series.close[std::size_t(seg.first) + i];
    double r = y - model.value(double(i));
    ss_res += r * r;
    ss_tot += (y - mean) * (y - mean);
  }
  FitResult out;
  out.model = model;
  out.segment = seg;
  out.residual_rms = std::sqrt(ss_res / double(n));
  if (ss_tot > 0.0) {
    out.r_squared = 1.0 - ss_res / ss_tot;
  } else {
    // Constant observations: every family reproduces them exactly.
    out.r_squared = out.residual_rms <= 1e-12 * scale
                        ? 1.0
                        : -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

double r_squared(std::span<const double> observed,
                 std::span<const double> predicted) {
  if (observed.size() != predicted.size())
    throw std::invalid_argument("r_squared: length mismatch");
  if (observed.size() < 2)
    throw std::invalid_argument("r_squared: needs at least 2 values");
  double mean = 0;
  for (double y : observed) mean += y;
  mean /= double(observed.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
  }
  if (ss_tot == 0.0)
    throw std::domain_error("r_squared: observed values have zero variance");
  return 1.0 - ss_res / ss_tot;
}

FitResult fit_linear(const PriceSeries& series, Segment seg) {
  check_segment(series, seg, 2, "fit_linear");
  const std::size_t n = std::size_t(seg.length());
  const double um = 0.5 * double(n - 1);
  double suu = 0, suy = 0, ym = 0;
  for (std::size_t i = 0; i < n; ++i) ym += series.close[std::size_t(seg.first) + i];
  ym /= double(n);
  for (std::size_t i = 0; i < n; ++i) {
    double du = double(i) - um;
    suu += du * du;
    suy += du * (series.close[std::size_t(seg.first) + i] - ym);
  }
  double slope = suy / suu;
  double level = ym - slope * um;  // value at tau = 0
  return finish(series, seg, make_linear(seg.first, level, slope));
}

FitResult fit_parabola(const PriceSeries& series, Segment seg) {
  check_segment(series, seg, 3, "fit_parabola");
  const std::size_t n = std::size_t(seg.length());
  const double um = 0.5 * double(n - 1);
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = double(i) - um;
    A(i, 0) = 1.0;
    A(i, 1) = u;
    A(i, 2) = u * u;
    y(i) = series.close[std::size_t(seg.first) + i];
  }
  Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
  // Shift from u = tau - um back to tau.
  double c2 = c(2);
  double c1 = c(1) - 2.0 * c2 * um;
  double c0 = c(0) - c(1) * um + c2 * um * um;
  return finish(series, seg, make_parabolic(seg.first, c0, c1, 2.0 * c2));
}

FitResult fit_exponential(const PriceSeries& series, Segment seg) {
  check_segment(series, seg, 2, "fit_exponential");
  const std::size_t n = std::size_t(seg.length());
  const double um = 0.5 * double(n - 1);
  double suu = 0, suy = 0, ym = 0;
  for (std::size_t i = 0; i < n; ++i)
    ym += std::log(series.close[std::size_t(seg.first) + i]);
  ym /= double(n);
  for (std::size_t i = 0; i < n; ++i) {
    double du = double(i) - um;
    suu += du * du;
    suy += du * (std::log(series.close[std::size_t(seg.first) + i]) - ym);
  }
  double growth = suy / suu;
  double scale = std::exp(ym - growth * um);
  return finish(series, seg, make_exponential(seg.first, scale, growth));
}

FitResult fit_sinusoid(const PriceSeries& series, Segment seg,
                       const PeriodGrid& grid) {
  check_segment(series, seg, 8, "fit_sinusoid");
  const std::size_t n = std::size_t(seg.length());
  if (!(grid.step > 0) || grid.min_period > grid.max_period)
    throw std::invalid_argument("fit_sinusoid: empty period grid");
  if (grid.min_period < 4.0 || grid.max_period > 2.0 * double(n))
    throw std::invalid_argument(
        "fit_sinusoid: period grid must lie within [4, 2x segment length]");

  const double um = 0.5 * double(n - 1);
  Eigen::VectorXd y(n);
  double price_scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    y(i) = series.close[std::size_t(seg.first) + i];
    price_scale += std::abs(y(i));
  }
  price_scale /= double(n);

  const std::size_t count =
      std::size_t((grid.max_period - grid.min_period) / grid.step + 1e-9) + 1;
  double best_ss = std::numeric_limits<double>::infinity();
  double best_period = 0;
  Eigen::Vector4d best_c = Eigen::Vector4d::Zero();

  Eigen::MatrixXd A(n, 4);
  for (std::size_t pi = 0; pi < count; ++pi) {
    const double period = grid.min_period + double(pi) * grid.step;
    const double w = kTwoPi / period;
    for (std::size_t i = 0; i < n; ++i) {
      double u = double(i) - um;
      A(i, 0) = 1.0;
      A(i, 1) = u;
      A(i, 2) = std::sin(w * u);
      A(i, 3) = std::cos(w * u);
    }
    Eigen::Vector4d c = A.colPivHouseholderQr().solve(y);
    double ss = (y - A * c).squaredNorm();
    if (ss < best_ss) {  // strict: ties keep the smallest period
      best_ss = ss;
      best_period = period;
      best_c = c;
    }
  }

  const double w = kTwoPi / best_period;
  const double amplitude = std::hypot(best_c(2), best_c(3));
  double phase = std::atan2(best_c(3), best_c(2)) - w * um;
  phase = std::remainder(phase, kTwoPi);
  if (phase <= -std::numbers::pi) phase += kTwoPi;
  const double drift = best_c(1);
  const double base = best_c(0) - drift * um;

  FitResult out = finish(
      series, seg, make_cyclic(seg.first, base, drift, amplitude, w, phase));
  out.degenerate_amplitude = amplitude <= 1e-9 * price_scale;
  return out;
}

TrendModel exponential_line_through_two_points(PricePoint p1, PricePoint p2) {
  if (p1.ordinal == p2.ordinal)
    throw std::invalid_argument("exponential line needs distinct ordinals");
  if (!(p1.price > 0.0) || !(p2.price > 0.0))
    throw std::domain_error("exponential line needs positive prices");
  if (p2.ordinal < p1.ordinal) std::swap(p1, p2);
  double growth = std::log(p2.price / p1.price) / double(p2.ordinal - p1.ordinal);
  return make_exponential(p1.ordinal, p1.price, growth);
}

TrendModel parabola_through_three_points(PricePoint p1, PricePoint p2,
                                         PricePoint p3) {
  if (p2.ordinal < p1.ordinal) std::swap(p1, p2);
  if (p3.ordinal < p2.ordinal) std::swap(p2, p3);
  if (p2.ordinal < p1.ordinal) std::swap(p1, p2);
  if (p1.ordinal == p2.ordinal || p2.ordinal == p3.ordinal)
    throw std::invalid_argument("parabola needs three distinct ordinals");
  const double t1 = double(p2.ordinal - p1.ordinal);
  const double t2 = double(p3.ordinal - p1.ordinal);
  const double d1 = (p2.price - p1.price) / t1;
  const double d2 = (p3.price - p1.price) / t2;
  const double c2 = (d1 - d2) / (t1 - t2);
  const double c1 = d1 - c2 * t1;
  return make_parabolic(p1.ordinal, p1.price, c1, 2.0 * c2);
}

}  // namespace trendlens
