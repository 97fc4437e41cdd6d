#pragma once

#include <cstddef>
#include <string>

#include "trendlens/fitting.hpp"

namespace trendlens {

/// Detection parameters shared by the segmentation and formation pipelines.
/// All values are exposed because chart work tunes them by instrument.
struct Config {
  std::size_t extrema_window = 10;  // w, trading days each side
  double crossing_band = 0.005;     // relative tolerance around a line
  int confirm_days = 3;             // consecutive closes to confirm a cross
  PeriodGrid period_grid{16, 1000, 1};
  std::size_t min_epoch_length = 250;  // trading days
  double family_tie_margin = 0.01;     // delta R^2 for the parsimony tie-break
  double classify_tolerance = 0.15;    // classify_signature default
  // Formation (neckline) crossing parameters; default to the line settings.
  double formation_band = 0.005;
  int formation_confirm = 3;

  void validate() const;  // throws std::invalid_argument

  static Config from_json_file(const std::string& path);
  static Config from_json_text(const std::string& text);
  std::string to_json() const;
};

}  // namespace trendlens
