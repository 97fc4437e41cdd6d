#pragma once

#include <optional>
#include <string>

#include "trendlens/config.hpp"
#include "trendlens/csv.hpp"
#include "trendlens/formations.hpp"
#include "trendlens/segmentation.hpp"

namespace trendlens {

/// Deterministic JSON/CSV emission. Numeric report fields are rounded to six
/// significant digits; the same input and config always produce identical
/// bytes. Plot CSVs print closes with full round-trip precision so the input
/// values survive a round trip.

// date,ordinal,close,return,acceleration (return = speed, $/day; first one
// or two cells of the difference columns are empty).
std::string kinematics_csv(const PriceSeries& series);

// date,ordinal,close,model,residual; one row per trading day. Days inside
// transition gaps have empty model/residual cells.
std::string plotdata_csv(const PriceSeries& series,
                         const std::vector<Epoch>& epochs);

// Single-fit report (CLI `fit`).
std::string fit_report_json(const PriceSeries& series, const FitResult& fit,
                            const std::string& family);

// Epoch report (CLI `segment`).
std::string segmentation_report_json(const PriceSeries& series,
                                     const std::vector<Epoch>& epochs,
                                     const Config& config);

// Formation report (CLI `formations`).
std::string formations_report_json(const PriceSeries& series,
                                   const Config& config,
                                   std::optional<double> base_level);

// Full pipeline document (CLI `report`): input summary, config echo,
// kinematics summary, epochs, lines with role history, formations.
std::string full_report_json(const CsvResult& input, const std::string& source,
                             const Config& config,
                             std::optional<double> base_level);

}  // namespace trendlens
