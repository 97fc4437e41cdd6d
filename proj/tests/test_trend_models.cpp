#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support/reference_models.hpp"
#include "trendlens/trend_models.hpp"

using namespace trendlens;

namespace {

bool contains(const std::vector<TrendFamily>& v, TrendFamily f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

}  // namespace

TEST_CASE("evaluate per family") {
  auto lin = make_linear(0, 1000.0, 0.0);
  CHECK(lin.value(0) == 1000.0);
  CHECK(lin.value(123.5) == 1000.0);

  auto cyc = testref::channel_sinusoid();
  CHECK(cyc.value(0) == doctest::Approx(750.0).epsilon(1e-12));
  CHECK(cyc.value(375) == doctest::Approx(1000.0).epsilon(1e-12));

  auto par = testref::quadratic_8796();
  CHECK(par.value(1) == doctest::Approx(8821.1198).epsilon(1e-12));
}

TEST_CASE("analytic speed per family") {
  auto lin = make_linear(0, 50.0, -2.5);
  CHECK(lin.speed(0) == -2.5);
  CHECK(lin.speed(1000) == -2.5);

  auto par = testref::quadratic_10564();
  CHECK(par.speed(0) == doctest::Approx(21.7763).epsilon(1e-12));
  CHECK(std::abs(par.speed(0) - 21.8) < 0.05);

  auto exp = make_exponential(0, 41.22, 0.000333);
  CHECK(exp.speed(0) == doctest::Approx(0.000333 * 41.22).epsilon(1e-12));
  CHECK(exp.speed(0) == doctest::Approx(0.01373).epsilon(1e-3));
}

TEST_CASE("analytic acceleration per family") {
  CHECK(make_linear(0, 5.0, 3.0).acceleration(17) == 0.0);

  auto par = testref::quadratic_10564();
  CHECK(par.acceleration(0) == doctest::Approx(-0.0810).epsilon(1e-12));
  CHECK(par.acceleration(400) == doctest::Approx(-0.0810).epsilon(1e-12));

  // cyclic acceleration vanishes where the sine does, drift notwithstanding
  auto cyc = make_cyclic(0, 875, 1.25, 125.0,
                         2.0 * std::numbers::pi / 750.0, -std::numbers::pi / 2);
  const double tau_zero = 187.5;  // frequency*tau + phase == 0
  CHECK(std::abs(cyc.acceleration(tau_zero)) < 1e-12);
}

TEST_CASE("cyclic with zero base and drift is the plain sinusoid") {
  auto cyc = make_cyclic(0, 0.0, 0.0, 125.0, 0.02, 0.3);
  for (double tau : {0.0, 10.0, 333.3, 1000.0})
    CHECK(cyc.value(tau) ==
          doctest::Approx(125.0 * std::sin(0.02 * tau + 0.3)).epsilon(1e-12));
}

TEST_CASE("discrete second differences match the analytic acceleration") {
  // exact for linear/parabolic; within max(growth, frequency)^2 relative for
  // exponential/cyclic when compared at the centered ordinal
  auto check = [](const TrendModel& m, std::size_t days, double rel_tol) {
    auto s = testref::sample_series(m, days);
    auto a = acceleration_series(s);
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      const double center_tau = double(j + a.offset - 1);
      const double analytic = m.acceleration(center_tau);
      const double scale = std::max(std::abs(analytic), 1e-3);
      CHECK(std::abs(a.values[j] - analytic) <= rel_tol * scale + 1e-9);
    }
  };
  check(make_linear(0, 100, 0.5), 200, 0.0);
  check(testref::quadratic_8796(), 300, 1e-12);
  const double growth = 0.002;
  check(make_exponential(0, 500, growth), 400, growth * growth);
  auto cyc = testref::channel_sinusoid();
  const double freq = std::get<CyclicTrend>(cyc.shape).frequency;
  check(cyc, 1500, freq * freq);
}

TEST_CASE("validating constructors") {
  CHECK_THROWS_AS(make_exponential(0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_exponential(0, -2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_cyclic(0, 0, 0, -1.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_cyclic(0, 0, 0, 1.0, 0.0, 0), std::invalid_argument);
  CHECK(make_cyclic(0, 0, 0, 0.0, 1.0, 0).parameter_count() == 5);
}

TEST_CASE("evaluate is continuous in tau and parameters") {
  auto m = testref::quadratic_8796();
  const double v = m.value(100.0);
  CHECK(std::abs(m.value(100.0 + 1e-9) - v) < 1e-5);
  auto nudged = make_parabolic(0, 8796.0 + 1e-9, 25.2343, -0.2290);
  CHECK(std::abs(nudged.value(100.0) - v) < 1e-6);
}

TEST_CASE("classify: near-zero acceleration reads as linear") {
  std::vector<double> closes;
  for (int t = 0; t < 300; ++t) closes.push_back(500.0 + 2.0 * t);
  auto s = PriceSeries::from_closes(closes);
  auto fams = classify_signature(acceleration_series(s), s, 0.15);
  CHECK(contains(fams, TrendFamily::Linear));
  CHECK_FALSE(contains(fams, TrendFamily::Parabolic));
  CHECK_FALSE(contains(fams, TrendFamily::Cyclic));
}

TEST_CASE("classify: constant nonzero acceleration reads as parabolic") {
  auto s = testref::sample_series(testref::quadratic_8796(), 300);
  auto fams = classify_signature(acceleration_series(s), s, 0.15);
  CHECK(fams == std::vector<TrendFamily>{TrendFamily::Parabolic});
}

TEST_CASE("classify: clean channel sinusoid reads as cyclic") {
  auto s = testref::sample_series(testref::channel_sinusoid(), 1500);
  auto fams = classify_signature(acceleration_series(s), s, 0.15);
  CHECK(fams == std::vector<TrendFamily>{TrendFamily::Cyclic});
}

TEST_CASE("classify: clean exponential reads as exponential") {
  auto s = testref::sample_series(make_exponential(0, 200.0, 0.001), 1000);
  auto fams = classify_signature(acceleration_series(s), s, 0.15);
  CHECK(contains(fams, TrendFamily::Exponential));
  CHECK_FALSE(contains(fams, TrendFamily::Cyclic));
}

TEST_CASE("classify: empty acceleration is rejected") {
  auto s = PriceSeries::from_closes({1.0, 2.0, 3.0});
  DiffSeries empty{{}, 2};
  CHECK_THROWS_AS(classify_signature(empty, s, 0.15), std::invalid_argument);
}
