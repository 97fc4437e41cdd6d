#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "support/reference_models.hpp"
#include "trendlens/segmentation.hpp"

using namespace trendlens;

namespace {

Config two_regime_config() {
  Config cfg;
  cfg.extrema_window = 10;
  cfg.crossing_band = 0.01;
  cfg.confirm_days = 5;
  cfg.min_epoch_length = 250;
  cfg.period_grid = {40, 120, 2};
  return cfg;
}

}  // namespace

TEST_CASE("constant series: one linear epoch with zero residuals") {
  auto s = PriceSeries::from_closes(std::vector<double>(300, 512.0));
  Config cfg;
  auto epochs = segment_epochs(s, cfg);
  REQUIRE(epochs.size() == 1);
  CHECK(epochs[0].start == 0);
  CHECK(epochs[0].end == 299);
  CHECK(epochs[0].model.family() == TrendFamily::Linear);
  CHECK(std::get<LinearTrend>(epochs[0].model.shape).slope == 0.0);
  CHECK(epochs[0].r_squared == 1.0);
  for (double r : epochs[0].residuals) CHECK(r == 0.0);
}

TEST_CASE("clean parabola: one parabolic epoch with perfect fit") {
  auto s = testref::sample_series(testref::quadratic_8796(), 300);
  Config cfg;
  cfg.min_epoch_length = 250;
  auto epochs = segment_epochs(s, cfg);
  REQUIRE(epochs.size() == 1);
  CHECK(epochs[0].model.family() == TrendFamily::Parabolic);
  CHECK(epochs[0].r_squared > 1.0 - 1e-9);
}

TEST_CASE("clean two-regime series: boundary and families") {
  auto s = PriceSeries::from_closes(testref::two_regime_closes(0.0, 0));
  Config cfg = two_regime_config();
  auto epochs = segment_epochs(s, cfg);

  REQUIRE(epochs.size() == 2);
  const auto tol =
      std::int64_t(cfg.extrema_window) + std::int64_t(cfg.confirm_days);
  CHECK(std::abs(epochs[0].end - (testref::kTwoRegimeBoundary - 1)) <= tol);
  CHECK(epochs[0].model.family() == TrendFamily::Exponential);
  const bool second_ok = epochs[1].model.family() == TrendFamily::Cyclic ||
                         epochs[1].model.family() == TrendFamily::Linear;
  CHECK(second_ok);

  // epochs partition the series with no overlap
  CHECK(epochs[0].start == 0);
  CHECK(epochs[1].start == epochs[0].end + 1);
  CHECK(epochs[1].end == std::int64_t(s.size()) - 1);
}

TEST_CASE("reconstruction: model plus residual reproduces the closes") {
  auto s = PriceSeries::from_closes(testref::two_regime_closes(0.01, 4));
  auto epochs = segment_epochs(s, two_regime_config());
  for (const auto& e : epochs) {
    REQUIRE(e.residuals.size() == std::size_t(e.end - e.start + 1));
    for (std::int64_t k = e.start; k <= e.end; ++k) {
      const double rebuilt =
          e.model.value_at(k) + e.residuals[std::size_t(k - e.start)];
      CHECK(std::abs(rebuilt - s.close[std::size_t(k)]) <=
            1e-9 * s.close[std::size_t(k)]);
    }
  }
}

TEST_CASE("segmentation is deterministic") {
  auto s = PriceSeries::from_closes(testref::two_regime_closes(0.01, 9));
  auto a = segment_epochs(s, two_regime_config());
  auto b = segment_epochs(s, two_regime_config());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].start == b[i].start);
    CHECK(a[i].end == b[i].end);
    CHECK(a[i].model.family() == b[i].model.family());
    CHECK(a[i].r_squared == b[i].r_squared);
  }
}

TEST_CASE("a monotone ramp has no extrema and stays one epoch") {
  std::vector<double> closes;
  for (int t = 0; t < 400; ++t) closes.push_back(50.0 + 1.5 * t);
  auto s = PriceSeries::from_closes(closes);
  Config cfg;
  auto epochs = segment_epochs(s, cfg);
  REQUIRE(epochs.size() == 1);
  CHECK(epochs[0].model.family() == TrendFamily::Linear);
  CHECK_FALSE(epochs[0].support.has_value());
  CHECK_FALSE(epochs[0].resist.has_value());
}

TEST_CASE("a short trailing remainder becomes a transition gap") {
  // cut the two-regime series so the channel part is shorter than a legal
  // epoch; those days must end up as the last epoch's gap, not an epoch
  auto closes = testref::two_regime_closes(0.0, 0);
  closes.resize(1200);
  auto s = PriceSeries::from_closes(closes);
  auto epochs = segment_epochs(s, two_regime_config());
  REQUIRE(epochs.size() == 1);
  REQUIRE(epochs[0].transition_gap.has_value());
  CHECK(epochs[0].transition_gap->first == epochs[0].end + 1);
  CHECK(epochs[0].transition_gap->last == 1199);
  // epoch plus gap still partitions the series
  CHECK(epochs[0].start == 0);
}

TEST_CASE("series shorter than the minimum epoch is rejected") {
  auto s = PriceSeries::from_closes(std::vector<double>(100, 10.0));
  Config cfg;
  cfg.min_epoch_length = 250;
  CHECK_THROWS_AS(segment_epochs(s, cfg), std::invalid_argument);
}

TEST_CASE("decompose: clean epoch has zero residuals") {
  auto s = testref::sample_series(testref::quadratic_7713(), 300);
  Config cfg;
  auto epochs = segment_epochs(s, cfg);
  auto residuals = decompose(s, epochs);
  REQUIRE(residuals.size() == epochs.size());
  for (double r : residuals[0]) CHECK(std::abs(r) < 1e-6);
}

TEST_CASE("decompose against the generating model recovers injected noise") {
  auto model = testref::quadratic_7713();
  std::mt19937 rng(31);
  std::normal_distribution<double> g(0.0, 25.0);
  std::vector<double> noise;
  std::vector<double> closes;
  for (int t = 0; t < 300; ++t) {
    noise.push_back(g(rng));
    closes.push_back(model.value(t) + noise.back());
  }
  auto s = PriceSeries::from_closes(closes);

  Epoch truth;
  truth.index = 1;
  truth.start = 0;
  truth.end = 299;
  truth.model = model;
  auto residuals = decompose(s, {truth});
  REQUIRE(residuals[0].size() == noise.size());
  for (std::size_t k = 0; k < noise.size(); ++k)
    CHECK(residuals[0][k] == doctest::Approx(noise[k]).epsilon(1e-12));
}

TEST_CASE("decompose rejects epochs outside the series") {
  auto s = PriceSeries::from_closes(std::vector<double>(50, 10.0));
  Epoch bad;
  bad.start = 0;
  bad.end = 99;
  bad.model = make_linear(0, 10.0, 0.0);
  CHECK_THROWS_AS(decompose(s, {bad}), std::out_of_range);
}

TEST_CASE("residual first differences on a noisy epoch center on zero") {
  const double sigma = 30.0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    auto s = testref::sample_series_noisy(testref::quadratic_8796(), 300,
                                          sigma, 700 + seed);
    Config cfg;
    auto epochs = segment_epochs(s, cfg);
    REQUIRE(!epochs.empty());
    const auto& res = epochs[0].residuals;
    double mean_diff = 0;
    for (std::size_t k = 1; k < res.size(); ++k) mean_diff += res[k] - res[k - 1];
    mean_diff /= double(res.size() - 1);
    CHECK(std::abs(mean_diff) < 3.0 * sigma / std::sqrt(double(res.size())));
  }
}

TEST_CASE("best-family selection: each generator wins on its own data") {
  Config cfg;
  cfg.extrema_window = 10;
  cfg.crossing_band = 0.015;
  cfg.confirm_days = 5;
  cfg.min_epoch_length = 250;
  cfg.period_grid = {40, 900, 5};

  struct Case {
    TrendFamily family;
    TrendModel model;
    std::size_t days;
    double level_scale;  // noise sigma = 2% of this
  };
  const std::vector<Case> cases = {
      {TrendFamily::Linear, make_linear(0, 600.0, 2.0), 600, 1200.0},
      {TrendFamily::Parabolic, testref::quadratic_8796(), 300, 8800.0},
      {TrendFamily::Exponential, make_exponential(0, 200.0, 0.001), 900, 350.0},
      {TrendFamily::Cyclic, testref::channel_sinusoid(), 1500, 875.0},
  };

  for (const auto& c : cases) {
    int hits = 0;
    const int trials = 25;
    for (int trial = 0; trial < trials; ++trial) {
      auto s = testref::sample_series_noisy(c.model, c.days,
                                            0.02 * c.level_scale,
                                            2000 + 100 * trial);
      auto epochs = segment_epochs(s, cfg);
      REQUIRE(!epochs.empty());
      // judge the dominant epoch; noise may occasionally clip the tail
      const Epoch* longest = &epochs[0];
      for (const auto& e : epochs)
        if (e.end - e.start > longest->end - longest->start) longest = &e;
      if (longest->model.family() == c.family) ++hits;
    }
    INFO("family ", family_name(c.family));
    CHECK(hits >= int(0.9 * trials));
  }
}
