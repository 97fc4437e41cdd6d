#include "trendlens/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace trendlens {

namespace {

using ordered_json = nlohmann::ordered_json;

// Report numbers carry six significant digits; rounding through text keeps
// the JSON byte-stable across runs.
double round6(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round6(v);
}

// Shortest round-trip representation; plot CSVs must reproduce the parsed
// closes exactly.
std::string full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string date_at(const PriceSeries& s, std::int64_t ordinal) {
  if (ordinal < 0 || ordinal >= std::int64_t(s.size())) return {};
  return s.dates[std::size_t(ordinal)].iso();
}

ordered_json model_params(const TrendModel& m) {
  ordered_json p;
  switch (m.family()) {
    case TrendFamily::Linear: {
      const auto& s = std::get<LinearTrend>(m.shape);
      p["level"] = num(s.level);
      p["slope"] = num(s.slope);
      break;
    }
    case TrendFamily::Parabolic: {
      const auto& s = std::get<ParabolicTrend>(m.shape);
      p["level"] = num(s.level);
      p["slope"] = num(s.slope);
      p["acceleration"] = num(s.accel);
      break;
    }
    case TrendFamily::Exponential: {
      const auto& s = std::get<ExponentialTrend>(m.shape);
      p["scale"] = num(s.scale);
      p["growth"] = num(s.growth);
      break;
    }
    case TrendFamily::Cyclic: {
      const auto& s = std::get<CyclicTrend>(m.shape);
      p["base"] = num(s.base);
      p["drift"] = num(s.drift);
      p["amplitude"] = num(s.amplitude);
      p["angular_frequency"] = num(s.frequency);
      p["phase"] = num(s.phase);
      p["period"] = num(s.period());
      break;
    }
  }
  return p;
}

ordered_json extremum_json(const PriceSeries& s, const ExtremumPoint& e) {
  ordered_json j;
  j["ordinal"] = e.ordinal;
  j["date"] = date_at(s, e.ordinal);
  j["price"] = num(e.price);
  j["kind"] = e.kind == ExtremumKind::Maximum ? "max" : "min";
  return j;
}

ordered_json line_json(const PriceSeries& s, const TrendLine& line) {
  ordered_json j;
  j["geometry"] =
      line.geometry == LineGeometry::Exponential ? "exponential" : "linear";
  j["role"] = line.role == LineRole::Supporting ? "supporting" : "resisting";
  j["anchors"] = ordered_json::array(
      {extremum_json(s, line.anchor_a), extremum_json(s, line.anchor_b)});
  j["model"] = model_params(line.model);
  j["origin"] = line.model.origin;
  return j;
}

ordered_json line_with_history(const PriceSeries& s, const TrendLine& line,
                               double band, int confirm) {
  ordered_json j = line_json(s, line);
  ordered_json history = ordered_json::array();
  TrendLine current = line;
  for (const LineEvent& ev : line_events(s, line, band, confirm)) {
    ordered_json h;
    h["ordinal"] = ev.ordinal;
    h["date"] = date_at(s, ev.ordinal);
    h["event"] = ev.kind == LineEventKind::CrossUp     ? "cross_up"
                 : ev.kind == LineEventKind::CrossDown ? "cross_down"
                                                       : "test";
    if (ev.kind != LineEventKind::Test) {
      current.role = role_after_cross(current, ev);
      h["role_after"] = current.role == LineRole::Supporting ? "supporting"
                                                             : "resisting";
    }
    history.push_back(h);
  }
  j["role_history"] = history;
  return j;
}

ordered_json stats_json(const std::vector<double>& v) {
  ordered_json j;
  if (v.empty()) {
    j["mean"] = nullptr;
    return j;
  }
  double mean = 0, mn = v.front(), mx = v.front();
  for (double x : v) {
    mean += x;
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  mean /= double(v.size());
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= double(v.size());
  j["mean"] = num(mean);
  j["sd"] = num(std::sqrt(var));
  j["min"] = num(mn);
  j["max"] = num(mx);
  return j;
}

ordered_json epoch_json(const PriceSeries& s, const Epoch& e) {
  ordered_json j;
  j["n"] = e.index;
  j["start_ordinal"] = e.start;
  j["end_ordinal"] = e.end;
  j["start_date"] = date_at(s, e.start);
  j["end_date"] = date_at(s, e.end);
  j["family"] = family_name(e.model.family());
  j["origin"] = e.model.origin;
  j["parameters"] = model_params(e.model);
  j["r_squared"] = num(e.r_squared);
  j["residual_rms"] = num(e.residual_rms);
  if (e.transition_gap) {
    j["transition_gap"] =
        ordered_json::array({e.transition_gap->first, e.transition_gap->last});
  } else {
    j["transition_gap"] = nullptr;
  }
  return j;
}

ordered_json formations_json(const PriceSeries& series, const Config& cfg,
                             std::optional<double> base_level) {
  ordered_json arr = ordered_json::array();
  if (series.size() <= 2 * cfg.extrema_window) return arr;
  const auto extrema = find_local_extrema(series, cfg.extrema_window);
  for (const Formation& f : detect_formations(extrema)) {
    ordered_json j;
    j["kind"] = f.kind == FormationKind::SHS ? "shs" : "rshs";
    j["left"] = extremum_json(series, f.left);
    j["head"] = extremum_json(series, f.head);
    j["right"] = extremum_json(series, f.right);
    TrendModel envelope = enveloping_parabola(f);
    j["envelope"] = model_params(envelope);
    j["envelope_acceleration"] =
        num(std::get<ParabolicTrend>(envelope.shape).accel);
    try {
      TrendLine neck = maturation_line(f, series);
      j["neckline"] = line_json(series, neck);
      const double level = neck.value_at(f.right.ordinal);
      j["maturation_level"] = num(level);
      auto matured = maturation_event(series, f, cfg.formation_band,
                                      cfg.formation_confirm);
      if (matured) {
        j["matured_at"] = ordered_json{
            {"ordinal", matured->event.ordinal},
            {"date", date_at(series, matured->event.ordinal)}};
      } else {
        j["matured_at"] = nullptr;
      }
      ForecastLevels fc = forecast_levels(f, level, base_level);
      ordered_json fj;
      fj["direction"] =
          fc.direction == PriceDirection::Fall ? "fall" : "rise";
      fj["maturation_level"] = num(fc.maturation_level);
      fj["base_level"] = fc.base_level ? num(*fc.base_level) : ordered_json();
      fj["target_level"] = fc.target_level ? num(*fc.target_level) : ordered_json();
      j["forecast"] = fj;
    } catch (const std::invalid_argument&) {
      j["neckline"] = nullptr;  // shoulders adjoin the head; no interior dip
      j["maturation_level"] = nullptr;
      j["matured_at"] = nullptr;
      j["forecast"] = nullptr;
    }
    arr.push_back(j);
  }
  return arr;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string kinematics_csv(const PriceSeries& series) {
  const DiffSeries ret = daily_returns(series);
  const DiffSeries acc =
      series.size() >= 3 ? acceleration_series(series) : DiffSeries{{}, 2};
  std::ostringstream out;
  out << "date,ordinal,close,return,acceleration\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << series.dates[k].iso() << ',' << k << ',' << full(series.close[k])
        << ',';
    if (k >= ret.offset) out << full(ret.values[k - ret.offset]);
    out << ',';
    if (k >= acc.offset && k - acc.offset < acc.values.size())
      out << full(acc.values[k - acc.offset]);
    out << '\n';
  }
  return out.str();
}

std::string plotdata_csv(const PriceSeries& series,
                         const std::vector<Epoch>& epochs) {
  std::ostringstream out;
  out << "date,ordinal,close,model,residual\n";
  std::size_t e = 0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    while (e < epochs.size() && std::int64_t(k) > epochs[e].end) ++e;
    const Epoch* in = (e < epochs.size() && std::int64_t(k) >= epochs[e].start)
                          ? &epochs[e]
                          : nullptr;
    out << series.dates[k].iso() << ',' << k << ',' << full(series.close[k])
        << ',';
    if (in) {
      const double m = in->model.value_at(std::int64_t(k));
      out << full(m) << ',' << full(series.close[k] - m);
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string fit_report_json(const PriceSeries& series, const FitResult& fit,
                            const std::string& family) {
  ordered_json j;
  j["family"] = family;
  j["segment"] = ordered_json{{"start_ordinal", fit.segment.first},
                              {"end_ordinal", fit.segment.last},
                              {"start_date", date_at(series, fit.segment.first)},
                              {"end_date", date_at(series, fit.segment.last)}};
  j["origin"] = fit.model.origin;
  j["parameters"] = model_params(fit.model);
  j["r_squared"] = num(fit.r_squared);
  j["residual_rms"] = num(fit.residual_rms);
  j["degenerate_amplitude"] = fit.degenerate_amplitude;
  return dump(j);
}

std::string segmentation_report_json(const PriceSeries& series,
                                     const std::vector<Epoch>& epochs,
                                     const Config& config) {
  ordered_json j;
  j["config"] = ordered_json::parse(config.to_json());
  ordered_json arr = ordered_json::array();
  for (const Epoch& e : epochs) {
    ordered_json ej = epoch_json(series, e);
    ej["support_line"] = e.support ? line_json(series, *e.support) : ordered_json();
    ej["resist_line"] = e.resist ? line_json(series, *e.resist) : ordered_json();
    arr.push_back(ej);
  }
  j["epochs"] = arr;
  return dump(j);
}

std::string formations_report_json(const PriceSeries& series,
                                   const Config& config,
                                   std::optional<double> base_level) {
  ordered_json j;
  j["config"] = ordered_json::parse(config.to_json());
  j["formations"] = formations_json(series, config, base_level);
  return dump(j);
}

std::string full_report_json(const CsvResult& input, const std::string& source,
                             const Config& config,
                             std::optional<double> base_level) {
  const PriceSeries& series = input.series;
  ordered_json j;

  ordered_json in;
  in["source"] = source;
  in["rows"] = series.size();
  in["start_date"] = series.dates.front().iso();
  in["end_date"] = series.dates.back().iso();
  in["price_field"] = input.used_adj_close ? "adj_close" : "close";
  in["warnings"] = input.warnings;
  j["input"] = in;

  j["config"] = ordered_json::parse(config.to_json());

  ordered_json kin;
  kin["returns"] = stats_json(daily_returns(series).values);
  if (series.size() >= 3)
    kin["acceleration"] = stats_json(acceleration_series(series).values);
  kin["volume"] = stats_json(series.volume);
  j["kinematics"] = kin;

  const auto epochs = segment_epochs(series, config);
  ordered_json earr = ordered_json::array();
  ordered_json larr = ordered_json::array();
  for (const Epoch& e : epochs) {
    earr.push_back(epoch_json(series, e));
    for (const auto* line : {&e.support, &e.resist}) {
      if (!line->has_value()) continue;
      ordered_json lj = line_with_history(series, **line, config.crossing_band,
                                          config.confirm_days);
      lj["epoch"] = e.index;
      larr.push_back(lj);
    }
  }
  j["epochs"] = earr;
  j["lines"] = larr;
  j["formations"] = formations_json(series, config, base_level);
  return dump(j);
}

}  // namespace trendlens
