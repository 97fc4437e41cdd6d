#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trendlens/report.hpp"

namespace py = pybind11;
using namespace trendlens;

namespace {

PriceSeries series_from_parts(const std::vector<std::string>& dates,
                              std::vector<double> close,
                              std::vector<double> volume) {
  std::vector<Date> parsed;
  parsed.reserve(dates.size());
  for (const auto& d : dates) parsed.push_back(Date::parse(d));
  if (volume.empty()) volume.assign(close.size(), 0.0);
  return PriceSeries(std::move(parsed), std::move(close), std::move(volume));
}

py::dict model_params(const TrendModel& m) {
  py::dict d;
  switch (m.family()) {
    case TrendFamily::Linear: {
      const auto& s = std::get<LinearTrend>(m.shape);
      d["level"] = s.level;
      d["slope"] = s.slope;
      break;
    }
    case TrendFamily::Parabolic: {
      const auto& s = std::get<ParabolicTrend>(m.shape);
      d["level"] = s.level;
      d["slope"] = s.slope;
      d["acceleration"] = s.accel;
      break;
    }
    case TrendFamily::Exponential: {
      const auto& s = std::get<ExponentialTrend>(m.shape);
      d["scale"] = s.scale;
      d["growth"] = s.growth;
      break;
    }
    case TrendFamily::Cyclic: {
      const auto& s = std::get<CyclicTrend>(m.shape);
      d["base"] = s.base;
      d["drift"] = s.drift;
      d["amplitude"] = s.amplitude;
      d["angular_frequency"] = s.frequency;
      d["phase"] = s.phase;
      d["period"] = s.period();
      break;
    }
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Piecewise parametric trend decomposition for daily price series: "
      "returns/speed/acceleration kinematics, four trend families with "
      "least-squares fitting, support/resistance lines, epoch segmentation "
      "and shoulder-head-shoulder formations.";

  py::register_exception<ParseError>(m, "CsvParseError", PyExc_ValueError);

  py::class_<PriceSeries>(m, "PriceSeries")
      .def(py::init(&series_from_parts), py::arg("dates"), py::arg("close"),
           py::arg("volume") = std::vector<double>{})
      .def_static(
          "from_closes",
          [](std::vector<double> close, const std::string& start) {
            return PriceSeries::from_closes(std::move(close),
                                            Date::parse(start));
          },
          py::arg("close"), py::arg("start") = "2000-01-03")
      .def_property_readonly("close",
                             [](const PriceSeries& s) { return s.close; })
      .def_property_readonly("volume",
                             [](const PriceSeries& s) { return s.volume; })
      .def_property_readonly("dates",
                             [](const PriceSeries& s) {
                               std::vector<std::string> out;
                               out.reserve(s.size());
                               for (const auto& d : s.dates)
                                 out.push_back(d.iso());
                               return out;
                             })
      .def("__len__", &PriceSeries::size)
      .def(
          "ordinal_of",
          [](const PriceSeries& s, const std::string& date) {
            return s.ordinal_of(Date::parse(date));
          },
          py::arg("date"))
      .def("__repr__", [](const PriceSeries& s) {
        std::ostringstream o;
        o << "PriceSeries(" << s.size() << " days, " << s.dates.front().iso()
          << ".." << s.dates.back().iso() << ")";
        return o.str();
      });

  py::class_<DiffSeries>(m, "DiffSeries")
      .def_readonly("values", &DiffSeries::values)
      .def_readonly("offset", &DiffSeries::offset)
      .def("__len__", [](const DiffSeries& d) { return d.values.size(); });

  m.def("daily_returns", &daily_returns, py::arg("series"));
  m.def("acceleration_series", &acceleration_series, py::arg("series"));

  py::enum_<TrendFamily>(m, "TrendFamily")
      .value("Linear", TrendFamily::Linear)
      .value("Parabolic", TrendFamily::Parabolic)
      .value("Exponential", TrendFamily::Exponential)
      .value("Cyclic", TrendFamily::Cyclic);

  py::class_<TrendModel>(m, "TrendModel")
      .def_readonly("origin", &TrendModel::origin)
      .def_property_readonly("family", &TrendModel::family)
      .def_property_readonly("params", &model_params)
      .def("value", &TrendModel::value, py::arg("tau"))
      .def("speed", &TrendModel::speed, py::arg("tau"))
      .def("acceleration", &TrendModel::acceleration, py::arg("tau"))
      .def("value_at", &TrendModel::value_at, py::arg("ordinal"))
      .def("__repr__", [](const TrendModel& t) {
        std::ostringstream o;
        o << "TrendModel(" << family_name(t.family())
          << ", origin=" << t.origin << ")";
        return o.str();
      });

  m.def("linear_trend", &make_linear, py::arg("origin"), py::arg("level"),
        py::arg("slope"));
  m.def("parabolic_trend", &make_parabolic, py::arg("origin"),
        py::arg("level"), py::arg("slope"), py::arg("acceleration"));
  m.def("exponential_trend", &make_exponential, py::arg("origin"),
        py::arg("scale"), py::arg("growth"));
  m.def("cyclic_trend", &make_cyclic, py::arg("origin"), py::arg("base"),
        py::arg("drift"), py::arg("amplitude"), py::arg("frequency"),
        py::arg("phase"));

  m.def("classify_signature", &classify_signature, py::arg("accel"),
        py::arg("prices"), py::arg("tolerance") = 0.15);

  py::class_<Segment>(m, "Segment")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("first"),
           py::arg("last"))
      .def_readonly("first", &Segment::first)
      .def_readonly("last", &Segment::last)
      .def_property_readonly("length", &Segment::length);

  py::class_<PeriodGrid>(m, "PeriodGrid")
      .def(py::init<double, double, double>(), py::arg("min_period"),
           py::arg("max_period"), py::arg("step") = 1.0)
      .def_readwrite("min_period", &PeriodGrid::min_period)
      .def_readwrite("max_period", &PeriodGrid::max_period)
      .def_readwrite("step", &PeriodGrid::step);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("model", &FitResult::model)
      .def_readonly("r_squared", &FitResult::r_squared)
      .def_readonly("segment", &FitResult::segment)
      .def_readonly("residual_rms", &FitResult::residual_rms)
      .def_readonly("degenerate_amplitude", &FitResult::degenerate_amplitude);

  m.def(
      "r_squared",
      [](const std::vector<double>& obs, const std::vector<double>& pred) {
        return r_squared(obs, pred);
      },
      py::arg("observed"), py::arg("predicted"));
  m.def("fit_linear", &fit_linear, py::arg("series"), py::arg("segment"));
  m.def("fit_parabola", &fit_parabola, py::arg("series"), py::arg("segment"));
  m.def("fit_exponential", &fit_exponential, py::arg("series"),
        py::arg("segment"));
  m.def("fit_sinusoid", &fit_sinusoid, py::arg("series"), py::arg("segment"),
        py::arg("grid"));

  m.def(
      "exponential_line_through_two_points",
      [](std::int64_t o1, double p1, std::int64_t o2, double p2) {
        return exponential_line_through_two_points({o1, p1}, {o2, p2});
      },
      py::arg("ordinal1"), py::arg("price1"), py::arg("ordinal2"),
      py::arg("price2"));
  m.def(
      "parabola_through_three_points",
      [](std::int64_t o1, double p1, std::int64_t o2, double p2,
         std::int64_t o3, double p3) {
        return parabola_through_three_points({o1, p1}, {o2, p2}, {o3, p3});
      },
      py::arg("ordinal1"), py::arg("price1"), py::arg("ordinal2"),
      py::arg("price2"), py::arg("ordinal3"), py::arg("price3"));

  py::enum_<ExtremumKind>(m, "ExtremumKind")
      .value("Maximum", ExtremumKind::Maximum)
      .value("Minimum", ExtremumKind::Minimum);

  py::class_<ExtremumPoint>(m, "ExtremumPoint")
      .def(py::init<std::int64_t, double, ExtremumKind, std::string>(),
           py::arg("ordinal"), py::arg("price"), py::arg("kind"),
           py::arg("label") = std::string{})
      .def_readonly("ordinal", &ExtremumPoint::ordinal)
      .def_readonly("price", &ExtremumPoint::price)
      .def_readonly("kind", &ExtremumPoint::kind)
      .def_readonly("label", &ExtremumPoint::label);

  py::enum_<LineGeometry>(m, "LineGeometry")
      .value("Linear", LineGeometry::Linear)
      .value("Exponential", LineGeometry::Exponential);
  py::enum_<LineRole>(m, "LineRole")
      .value("Supporting", LineRole::Supporting)
      .value("Resisting", LineRole::Resisting);

  py::class_<TrendLine>(m, "TrendLine")
      .def_readonly("geometry", &TrendLine::geometry)
      .def_readonly("role", &TrendLine::role)
      .def_readonly("anchor_a", &TrendLine::anchor_a)
      .def_readonly("anchor_b", &TrendLine::anchor_b)
      .def_readonly("model", &TrendLine::model)
      .def_readonly("label", &TrendLine::label)
      .def("value_at", &TrendLine::value_at, py::arg("ordinal"));

  py::enum_<LineEventKind>(m, "LineEventKind")
      .value("CrossUp", LineEventKind::CrossUp)
      .value("CrossDown", LineEventKind::CrossDown)
      .value("Test", LineEventKind::Test);

  py::class_<LineEvent>(m, "LineEvent")
      .def_readonly("ordinal", &LineEvent::ordinal)
      .def_readonly("kind", &LineEvent::kind);

  m.def("find_local_extrema", &find_local_extrema, py::arg("series"),
        py::arg("window"));
  m.def("line_through_extrema", &line_through_extrema, py::arg("a"),
        py::arg("b"), py::arg("geometry"));
  m.def("line_events", &line_events, py::arg("series"), py::arg("line"),
        py::arg("band"), py::arg("confirm"));
  m.def("role_after_cross", &role_after_cross, py::arg("line"),
        py::arg("event"));
  m.def("lines_form_band", &lines_form_band, py::arg("a"), py::arg("b"),
        py::arg("rel_tol") = 0.10);
  m.def("band_midline_value", &band_midline_value, py::arg("a"), py::arg("b"),
        py::arg("ordinal"));

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_readwrite("extrema_window", &Config::extrema_window)
      .def_readwrite("crossing_band", &Config::crossing_band)
      .def_readwrite("confirm_days", &Config::confirm_days)
      .def_readwrite("period_grid", &Config::period_grid)
      .def_readwrite("min_epoch_length", &Config::min_epoch_length)
      .def_readwrite("family_tie_margin", &Config::family_tie_margin)
      .def_readwrite("classify_tolerance", &Config::classify_tolerance)
      .def_readwrite("formation_band", &Config::formation_band)
      .def_readwrite("formation_confirm", &Config::formation_confirm)
      .def_static("from_json", &Config::from_json_text, py::arg("text"))
      .def("to_json", &Config::to_json);

  py::class_<Epoch>(m, "Epoch")
      .def_readonly("index", &Epoch::index)
      .def_readonly("start", &Epoch::start)
      .def_readonly("end", &Epoch::end)
      .def_readonly("model", &Epoch::model)
      .def_readonly("r_squared", &Epoch::r_squared)
      .def_readonly("residual_rms", &Epoch::residual_rms)
      .def_readonly("support", &Epoch::support)
      .def_readonly("resist", &Epoch::resist)
      .def_readonly("residuals", &Epoch::residuals)
      .def("__repr__", [](const Epoch& e) {
        std::ostringstream o;
        o << "Epoch(" << e.index << ", [" << e.start << ".." << e.end << "], "
          << family_name(e.model.family()) << ")";
        return o.str();
      });

  m.def("segment_epochs", &segment_epochs, py::arg("series"),
        py::arg("config") = Config{});
  m.def("decompose", &decompose, py::arg("series"), py::arg("epochs"));

  py::enum_<FormationKind>(m, "FormationKind")
      .value("SHS", FormationKind::SHS)
      .value("RSHS", FormationKind::RSHS);
  py::enum_<PriceDirection>(m, "PriceDirection")
      .value("Fall", PriceDirection::Fall)
      .value("Rise", PriceDirection::Rise);

  py::class_<Formation>(m, "Formation")
      .def(py::init<FormationKind, ExtremumPoint, ExtremumPoint,
                    ExtremumPoint>(),
           py::arg("kind"), py::arg("left"), py::arg("head"), py::arg("right"))
      .def_readonly("kind", &Formation::kind)
      .def_readonly("left", &Formation::left)
      .def_readonly("head", &Formation::head)
      .def_readonly("right", &Formation::right);

  py::class_<MaturationEvent>(m, "MaturationEvent")
      .def_readonly("event", &MaturationEvent::event)
      .def_readonly("direction", &MaturationEvent::direction);

  py::class_<ForecastLevels>(m, "ForecastLevels")
      .def_readonly("maturation_level", &ForecastLevels::maturation_level)
      .def_readonly("base_level", &ForecastLevels::base_level)
      .def_readonly("envelope_accel", &ForecastLevels::envelope_accel)
      .def_readonly("envelope", &ForecastLevels::envelope)
      .def_readonly("target_level", &ForecastLevels::target_level)
      .def_readonly("direction", &ForecastLevels::direction);

  m.def("detect_formations", &detect_formations, py::arg("extrema"));
  m.def("enveloping_parabola", &enveloping_parabola, py::arg("formation"));
  m.def("maturation_line", &maturation_line, py::arg("formation"),
        py::arg("series"));
  m.def("maturation_event", &maturation_event, py::arg("series"),
        py::arg("formation"), py::arg("band"), py::arg("confirm"));
  m.def("forecast_levels", &forecast_levels, py::arg("formation"),
        py::arg("maturation_level"),
        py::arg("base_level") = std::optional<double>{});

  py::class_<CsvResult>(m, "CsvResult")
      .def_readonly("series", &CsvResult::series)
      .def_readonly("used_adj_close", &CsvResult::used_adj_close)
      .def_readonly("warnings", &CsvResult::warnings);

  m.def("parse_csv", &parse_csv, py::arg("path"));
  m.def("kinematics_csv", &kinematics_csv, py::arg("series"));
  m.def("plotdata_csv", &plotdata_csv, py::arg("series"), py::arg("epochs"));
  m.def(
      "report_json",
      [](const PriceSeries& series, const Config& config,
         std::optional<double> base_level, const std::string& source) {
        CsvResult input{series, true, {}};
        return full_report_json(input, source, config, base_level);
      },
      py::arg("series"), py::arg("config") = Config{},
      py::arg("base_level") = std::optional<double>{},
      py::arg("source") = std::string("memory"));

  m.attr("__version__") = "0.1.0";
}
