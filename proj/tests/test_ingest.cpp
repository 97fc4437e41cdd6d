#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "support/reference_models.hpp"
#include "trendlens/csv.hpp"
#include "trendlens/report.hpp"

using namespace trendlens;

namespace {

CsvResult parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_csv_stream(in, "test.csv");
}

constexpr const char* kHeader =
    "Date,Open,High,Low,Close,Adj Close,Volume\n";

}  // namespace

TEST_CASE("Date parsing and formatting") {
  CHECK(Date::parse("1964-04-21") == Date{1964, 4, 21});
  CHECK(Date::parse("21.04.1964") == Date{1964, 4, 21});
  CHECK(Date::parse("1964/04/21") == Date{1964, 4, 21});
  CHECK(Date{2010, 5, 7}.iso() == "2010-05-07");
  CHECK_THROWS_AS(Date::parse("21 Apr 1964"), std::invalid_argument);
  CHECK_THROWS_AS(Date::parse("2020-13-01"), std::invalid_argument);
  CHECK_THROWS_AS(Date::parse("2020-02-30"), std::invalid_argument);
  CHECK(Date::parse("2020-02-29").valid());  // leap year

  // serial round trip and weekday sanity
  for (auto d : {Date{1928, 12, 1}, Date{1970, 1, 1}, Date{2011, 9, 2}})
    CHECK(Date::from_serial(d.serial()) == d);
  CHECK(Date{2010, 5, 7}.weekday() == 4);  // a Friday
  CHECK(Date{2010, 5, 7}.next_weekday() == Date{2010, 5, 10});
}

TEST_CASE("parse_csv: plain two-row file") {
  auto r = parse_text(std::string(kHeader) +
                      "2020-01-02,1,1,1,99.5,100.0,1000\n"
                      "2020-01-03,1,1,1,101.0,101.5,1200\n");
  CHECK(r.used_adj_close);
  CHECK(r.warnings.empty());
  REQUIRE(r.series.size() == 2);
  CHECK(r.series.close[0] == 100.0);
  CHECK(r.series.close[1] == 101.5);
  CHECK(r.series.volume[1] == 1200.0);
}

TEST_CASE("parse_csv: descending input comes out sorted") {
  auto r = parse_text(std::string(kHeader) +
                      "2020-01-03,1,1,1,1,101.5,0\n"
                      "2020-01-02,1,1,1,1,100.0,0\n");
  CHECK(r.series.dates[0] == Date{2020, 1, 2});
  CHECK(r.series.close[0] == 100.0);
}

TEST_CASE("parse_csv: a known close lands on its date's ordinal") {
  auto r = parse_text(std::string(kHeader) +
                      "2010-05-06,1,1,1,1,10520.32,0\n"
                      "2010-05-07,1,1,1,1,10380.43,0\n"
                      "2010-05-10,1,1,1,1,10785.14,0\n");
  auto ord = r.series.ordinal_of(Date{2010, 5, 7});
  REQUIRE(ord.has_value());
  CHECK(r.series.close[*ord] == 10380.43);
}

TEST_CASE("parse_csv error paths carry line numbers") {
  // malformed price on line 3
  try {
    parse_text(std::string(kHeader) +
               "2020-01-02,1,1,1,1,100.0,0\n"
               "2020-01-03,1,1,1,1,abc,0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_no() == 3);
  }

  CHECK_THROWS_AS(parse_text(""), ParseError);                   // empty file
  CHECK_THROWS_AS(parse_text(kHeader), ParseError);              // no data rows
  CHECK_THROWS_AS(parse_text(std::string(kHeader) +
                             "2020-01-02,1,1,1,1,100.0\n"),
                  ParseError);  // too few columns
  CHECK_THROWS_AS(parse_text(std::string(kHeader) +
                             "2020-01-02,1,1,1,1,-5.0,0\n"
                             "2020-01-03,1,1,1,1,100.0,0\n"),
                  ParseError);  // non-positive price
  CHECK_THROWS_AS(parse_text(std::string(kHeader) +
                             "2020-01-02,1,1,1,1,100.0,0\n"
                             "2020-01-02,1,1,1,1,101.0,0\n"),
                  ParseError);  // duplicate date
  CHECK_THROWS_AS(parse_text(std::string(kHeader) +
                             "2020-01-02,1,1,1,1,100.0,-3\n"
                             "2020-01-03,1,1,1,1,101.0,0\n"),
                  ParseError);  // negative volume
}

TEST_CASE("parse_csv falls back to Close without Adj Close") {
  auto r = parse_text(
      "Date,Close,Volume\n"
      "2020-01-02,100.0,5\n"
      "2020-01-03,101.0,6\n");
  CHECK_FALSE(r.used_adj_close);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.series.close[0] == 100.0);
}

TEST_CASE("parse_csv tolerates a missing Volume column with a warning") {
  auto r = parse_text(
      "Date,Adj Close\n"
      "2020-01-02,100.0\n"
      "2020-01-03,101.0\n");
  CHECK(r.series.volume[0] == 0.0);
  REQUIRE(r.warnings.size() == 1);
}

TEST_CASE("plotdata round-trips every date and close") {
  auto s = testref::sample_series_noisy(testref::quadratic_7713(), 300, 40.0, 5);
  Config cfg;
  auto epochs = segment_epochs(s, cfg);
  std::string csv = plotdata_csv(s, epochs);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "date,ordinal,close,model,residual");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
    auto c3 = line.find(',', c2 + 1);
    const std::string date = line.substr(0, c1);
    const double close = std::strtod(line.substr(c2 + 1, c3 - c2 - 1).c_str(), nullptr);
    CHECK(date == s.dates[rows].iso());
    CHECK(close == s.close[rows]);  // bit-exact round trip
    ++rows;
  }
  CHECK(rows == s.size());
}

TEST_CASE("kinematics CSV has one row per day and empty lead cells") {
  auto s = PriceSeries::from_closes({100, 103, 101, 104});
  std::string csv = kinematics_csv(s);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "date,ordinal,close,return,acceleration");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].substr(rows[0].size() - 2) == ",,");  // no return, no accel
  CHECK(rows[1].find(",3,") != std::string::npos);   // first return
}

TEST_CASE("reports are byte-identical across runs") {
  auto closes = testref::two_regime_closes(0.01, 13);
  auto s = PriceSeries::from_closes(closes);
  CsvResult input{s, true, {}};
  Config cfg;
  cfg.extrema_window = 10;
  cfg.crossing_band = 0.01;
  cfg.confirm_days = 5;
  cfg.min_epoch_length = 250;
  cfg.period_grid = {40, 120, 2};

  const std::string a = full_report_json(input, "mem.csv", cfg, std::nullopt);
  const std::string b = full_report_json(input, "mem.csv", cfg, std::nullopt);
  CHECK(a == b);
  CHECK(a.find("\"epochs\"") != std::string::npos);
  CHECK(a.find("\"formations\"") != std::string::npos);
  CHECK(a.find("\"lines\"") != std::string::npos);
}

TEST_CASE("config: JSON round trip and validation") {
  Config cfg = Config::from_json_text(R"({
    "extrema_window": 15,
    "crossing_band": 0.02,
    "confirm_days": 4,
    "period_grid": {"min": 30, "max": 200, "step": 2},
    "min_epoch_length": 100
  })");
  CHECK(cfg.extrema_window == 15);
  CHECK(cfg.crossing_band == 0.02);
  CHECK(cfg.confirm_days == 4);
  CHECK(cfg.period_grid.min_period == 30);
  CHECK(cfg.min_epoch_length == 100);
  // formation settings follow the line settings unless set explicitly
  CHECK(cfg.formation_band == 0.02);
  CHECK(cfg.formation_confirm == 4);

  auto echo = Config::from_json_text(cfg.to_json());
  CHECK(echo.extrema_window == cfg.extrema_window);
  CHECK(echo.period_grid.max_period == cfg.period_grid.max_period);

  CHECK_THROWS_AS(Config::from_json_text(R"({"confirm_days": 0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Config::from_json_text(R"({"period_grid": {"min": 50, "max": 40}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(Config::from_json_text("not json"), std::invalid_argument);
}
