#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "mstphase/scan.hpp"

namespace mstphase {

// One row per window; doubles at 17 significant digits; optional fields empty.
void write_series_csv(const ScanSeries& series, std::ostream& out);

// Full round trip: config, thresholds, and per-window metrics including the
// degree distribution and fit, so labels can be recomputed downstream.
// Execution details (thread count) are deliberately not part of the series.
nlohmann::json series_to_json(const ScanSeries& series);
ScanSeries series_from_json(const nlohmann::json& j);

nlohmann::json metrics_to_json(const WindowMetrics& m);

// Labels before and after smoothing, per-window evidence, and transition events.
nlohmann::json phases_to_json(const ScanSeries& series);

uint64_t fnv1a64_file(const std::string& path);

} // namespace mstphase
