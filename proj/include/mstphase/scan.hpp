#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mstphase/metrics.hpp"
#include "mstphase/mst.hpp"
#include "mstphase/panel.hpp"
#include "mstphase/phase.hpp"

namespace mstphase {

struct ScanConfig {
    size_t window_length = 0; // price days per window, >= 30
    size_t step = 1;          // window start spacing, in [1, window_length]
    size_t gap_limit = 5;     // longest tolerated missing run inside a window
    int fit_lo = 2, fit_hi = 10;
    bool detrend = true;      // remove the cross-sectional mean return per day
    std::optional<std::string> static_center;
    std::vector<std::string> exclude;
    double coincidence_tol = 0.05;
    int threads = 1;
    bool keep_trees = false;
    Thresholds thresholds;
};

struct WindowRecord {
    size_t index = 0;
    std::string window_start, window_end;
    int n_survivors = 0;
    bool skipped = false;
    std::string skip_reason;              // empty unless skipped
    std::optional<WindowMetrics> metrics; // absent when skipped
};

struct ScanSeries {
    ScanConfig config;
    std::vector<WindowRecord> records;
    std::vector<std::optional<Tree>> trees; // parallel to records when keep_trees
};

struct WindowAnalysis {
    WindowRecord record;
    std::optional<Tree> tree; // present unless the window was skipped
};

// One window through the pipeline: survivors -> detrended log returns ->
// correlations -> distances -> MST -> metrics -> phase label. Tickers with
// constant returns are dropped and the window retried; fewer than 3 survivors
// marks the record skipped.
WindowAnalysis analyze_window(const PricePanel& panel, const ScanConfig& cfg,
                              size_t index, size_t start);

// Rolling-window scan over window starts 0, step, 2*step, ... Worker threads
// claim windows by index, so the result is identical for any thread count.
ScanSeries run_scan(const PricePanel& panel, const ScanConfig& cfg);

// Record index of the earliest non-skipped window attaining the minimum of a
// metric: one of mol_dynamic, mol_static, s_deg, s_eff, mean_tree_length.
size_t absolute_minimum(const ScanSeries& series, const std::string& metric);

// Maximal runs of consecutive windows where the static and dynamic centers
// agree to within coincidence_tol, as (first start, last end) date intervals.
// Requires a configured static center.
std::vector<std::pair<std::string, std::string>>
coincidence_intervals(const ScanSeries& series);

struct SeriesTransition {
    size_t index = 0; // record index where the new label takes effect
    std::string window_start;
    PhaseKind from = PhaseKind::Indeterminate;
    PhaseKind to = PhaseKind::Indeterminate;
};

// Label changes between consecutive non-skipped windows after majority
// smoothing with the configured w_smooth.
std::vector<SeriesTransition> series_transitions(const ScanSeries& series);

} // namespace mstphase
