#include "trendlens/config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace trendlens {

void Config::validate() const {
  if (extrema_window < 1)
    throw std::invalid_argument("extrema_window must be >= 1");
  if (crossing_band < 0)
    throw std::invalid_argument("crossing_band must be >= 0");
  if (confirm_days < 1) throw std::invalid_argument("confirm_days must be >= 1");
  if (!(period_grid.step > 0))
    throw std::invalid_argument("period_grid step must be > 0");
  if (!(period_grid.min_period < period_grid.max_period))
    throw std::invalid_argument("period_grid min must be < max");
  if (!(period_grid.min_period > 0))
    throw std::invalid_argument("period_grid min must be > 0");
  if (min_epoch_length < 2)
    throw std::invalid_argument("min_epoch_length must be >= 2");
  if (family_tie_margin < 0)
    throw std::invalid_argument("family_tie_margin must be >= 0");
  if (!(classify_tolerance > 0))
    throw std::invalid_argument("classify_tolerance must be > 0");
  if (formation_band < 0)
    throw std::invalid_argument("formation_band must be >= 0");
  if (formation_confirm < 1)
    throw std::invalid_argument("formation_confirm must be >= 1");
}

Config Config::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  Config c;
  c.extrema_window = j.value("extrema_window", c.extrema_window);
  c.crossing_band = j.value("crossing_band", c.crossing_band);
  c.confirm_days = j.value("confirm_days", c.confirm_days);
  if (j.contains("period_grid")) {
    const auto& g = j.at("period_grid");
    c.period_grid.min_period = g.value("min", c.period_grid.min_period);
    c.period_grid.max_period = g.value("max", c.period_grid.max_period);
    c.period_grid.step = g.value("step", c.period_grid.step);
  }
  c.min_epoch_length = j.value("min_epoch_length", c.min_epoch_length);
  c.family_tie_margin = j.value("family_tie_margin", c.family_tie_margin);
  c.classify_tolerance = j.value("classify_tolerance", c.classify_tolerance);
  c.formation_band = j.value("formation_band", c.crossing_band);
  c.formation_confirm = j.value("formation_confirm", c.confirm_days);
  c.validate();
  return c;
}

Config Config::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string Config::to_json() const {
  nlohmann::ordered_json j;
  j["extrema_window"] = extrema_window;
  j["crossing_band"] = crossing_band;
  j["confirm_days"] = confirm_days;
  j["period_grid"] = {{"min", period_grid.min_period},
                      {"max", period_grid.max_period},
                      {"step", period_grid.step}};
  j["min_epoch_length"] = min_epoch_length;
  j["family_tie_margin"] = family_tie_margin;
  j["classify_tolerance"] = classify_tolerance;
  j["formation_band"] = formation_band;
  j["formation_confirm"] = formation_confirm;
  return j.dump(2);
}

}  // namespace trendlens
