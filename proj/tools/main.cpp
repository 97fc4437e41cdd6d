#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trendlens/report.hpp"

namespace {

using namespace trendlens;

struct CommonOpts {
  std::string input;
  std::string config_path;
  std::string out;
  std::string from, to;
  std::optional<std::size_t> window;
  std::optional<double> band;
  std::optional<int> confirm;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("input", o.input, "daily history CSV")->required();
  sub->add_option("--config", o.config_path, "JSON config file");
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
  sub->add_option("--from", o.from, "first date to analyze (inclusive)");
  sub->add_option("--to", o.to, "last date to analyze (inclusive)");
  sub->add_option("--window", o.window, "extrema window, trading days");
  sub->add_option("--band", o.band, "crossing band, relative");
  sub->add_option("--confirm", o.confirm, "days to confirm a cross");
}

Config load_config(const CommonOpts& o) {
  Config cfg = o.config_path.empty() ? Config{}
                                     : Config::from_json_file(o.config_path);
  if (o.window) cfg.extrema_window = *o.window;
  if (o.band) {
    cfg.crossing_band = *o.band;
    cfg.formation_band = *o.band;
  }
  if (o.confirm) {
    cfg.confirm_days = *o.confirm;
    cfg.formation_confirm = *o.confirm;
  }
  cfg.validate();
  return cfg;
}

PriceSeries slice(const PriceSeries& s, const std::string& from,
                  const std::string& to) {
  std::size_t a = 0, b = s.size() - 1;
  if (!from.empty()) a = s.first_on_or_after(Date::parse(from));
  if (!to.empty()) {
    auto last = s.last_on_or_before(Date::parse(to));
    if (!last) throw std::runtime_error("no rows on or before --to");
    b = *last;
  }
  if (a >= s.size() || b < a)
    throw std::runtime_error("empty date range selected");
  if (a == 0 && b + 1 == s.size()) return s;
  return PriceSeries(
      {s.dates.begin() + std::ptrdiff_t(a), s.dates.begin() + std::ptrdiff_t(b) + 1},
      {s.close.begin() + std::ptrdiff_t(a), s.close.begin() + std::ptrdiff_t(b) + 1},
      {s.volume.begin() + std::ptrdiff_t(a), s.volume.begin() + std::ptrdiff_t(b) + 1});
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

FitResult run_fit(const PriceSeries& series, const std::string& family,
                  const Config& cfg, std::string& canonical) {
  const Segment seg{0, std::int64_t(series.size()) - 1};
  if (family == "linear") {
    canonical = "linear";
    return fit_linear(series, seg);
  }
  if (family == "parabola" || family == "parabolic") {
    canonical = "parabolic";
    return fit_parabola(series, seg);
  }
  if (family == "exponential") {
    canonical = "exponential";
    return fit_exponential(series, seg);
  }
  if (family == "sinusoid" || family == "cyclic") {
    canonical = "cyclic";
    PeriodGrid grid = cfg.period_grid;
    grid.min_period = std::max(4.0, grid.min_period);
    grid.max_period = std::min(2.0 * double(series.size()), grid.max_period);
    return fit_sinusoid(series, seg, grid);
  }
  throw CLI::ValidationError(
      "--family", "unknown family '" + family +
                      "' (linear|parabola|exponential|sinusoid)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piecewise trend decomposition for daily price series"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string family = "linear";
  std::optional<double> base_level;

  CLI::App* kin = app.add_subcommand(
      "kinematics", "emit date,close,return,acceleration CSV");
  add_common(kin, opts);

  CLI::App* fit = app.add_subcommand("fit", "fit one trend family to a range");
  add_common(fit, opts);
  fit->add_option("--family", family,
                  "linear|parabola|exponential|sinusoid")->required();

  CLI::App* seg = app.add_subcommand("segment", "split into epochs and fit each");
  add_common(seg, opts);

  CLI::App* form = app.add_subcommand(
      "formations", "detect shoulder-head-shoulder formations");
  add_common(form, opts);
  form->add_option("--base", base_level, "base level for forecast targets, $");

  CLI::App* plot = app.add_subcommand(
      "plotdata", "per-day CSV of close, model value and residual");
  add_common(plot, opts);

  CLI::App* rep = app.add_subcommand("report", "full analysis document");
  add_common(rep, opts);
  rep->add_option("--base", base_level, "base level for forecast targets, $");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Config cfg = load_config(opts);
    CsvResult input = parse_csv(opts.input);
    PriceSeries series = slice(input.series, opts.from, opts.to);

    if (app.got_subcommand(kin)) {
      emit(kinematics_csv(series), opts.out);
    } else if (app.got_subcommand(fit)) {
      std::string canonical;
      FitResult r = run_fit(series, family, cfg, canonical);
      emit(fit_report_json(series, r, canonical), opts.out);
    } else if (app.got_subcommand(seg)) {
      emit(segmentation_report_json(series, segment_epochs(series, cfg), cfg),
           opts.out);
    } else if (app.got_subcommand(form)) {
      emit(formations_report_json(series, cfg, base_level), opts.out);
    } else if (app.got_subcommand(plot)) {
      emit(plotdata_csv(series, segment_epochs(series, cfg)), opts.out);
    } else if (app.got_subcommand(rep)) {
      CsvResult sliced{std::move(series), input.used_adj_close, input.warnings};
      emit(full_report_json(sliced, opts.input, cfg, base_level), opts.out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
