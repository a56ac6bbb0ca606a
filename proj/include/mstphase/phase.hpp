#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstphase/metrics.hpp"

namespace mstphase {

struct Thresholds {
    double r_gap = 3.0;        // k1 must exceed r_gap * k2
    double p_tail = 0.1;       // expected count at k1 below this is anomalous
    double z_hub = 2.0;        // standardized log-excess for outlier hubs
    double rel_err_max = 0.25; // stderr/gamma gate for a usable fit
    int h_min = 2;             // outlier-hub vertices needed for decorated label
    int w_smooth = 3;          // centered majority-smoothing window (odd)
};

// True when the maximal-degree vertex is both gap-separated from the rest of
// the degree sequence and far out on the tail of the fitted distribution.
// Without a fit the gap condition alone decides (a pure star has no fit).
bool detect_dragon_king(const DegreeDistribution& dist, const PowerLawFit* fit,
                        const Thresholds& th);

// Vertices with degree above the fit range whose bin occupancy exceeds the
// fitted expectation by more than z_hub standard units. The single
// maximal-degree vertex never counts: it is judged by the dragon-king test.
int count_outlier_hubs(const DegreeDistribution& dist, const PowerLawFit& fit,
                       const Thresholds& th);

PhaseLabel classify(const WindowMetrics& m, const Thresholds& th);

// Centered majority vote over w_smooth labels, truncated at the ends.
// A tied vote keeps the original label. w_smooth must be odd and positive.
std::vector<PhaseKind> smooth_labels(const std::vector<PhaseKind>& labels,
                                     int w_smooth);

struct TransitionEvent {
    size_t index = 0; // position where the new label takes effect
    PhaseKind from = PhaseKind::Indeterminate;
    PhaseKind to = PhaseKind::Indeterminate;
};

std::vector<TransitionEvent> transitions(const std::vector<PhaseKind>& labels,
                                         int w_smooth);

} // namespace mstphase
