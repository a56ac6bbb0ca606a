#include "mstphase/phase.hpp"

#include <array>
#include <cmath>

#include "mstphase/common.hpp"

namespace mstphase {

namespace {

// Largest and second-largest degree with multiplicity: a repeated maximum is
// its own runner-up.
std::pair<int, int> top_two(const DegreeDistribution& dist) {
    if (dist.support.empty()) return {0, 0};
    int k1 = dist.support.back();
    if (dist.count(k1) >= 2) return {k1, k1};
    int k2 = dist.support.size() >= 2 ? dist.support[dist.support.size() - 2] : 0;
    return {k1, k2};
}

} // namespace

bool detect_dragon_king(const DegreeDistribution& dist, const PowerLawFit* fit,
                        const Thresholds& th) {
    auto [k1, k2] = top_two(dist);
    if (k1 < th.r_gap * k2) return false;
    if (!fit) return k1 > 1;
    return expected_count(*fit, dist.n_vertices, k1) < th.p_tail;
}

int count_outlier_hubs(const DegreeDistribution& dist, const PowerLawFit& fit,
                       const Thresholds& th) {
    int k1 = dist.k_max();
    int total = 0;
    for (size_t i = 0; i < dist.support.size(); ++i) {
        int k = dist.support[i];
        if (k <= fit.fit_hi) continue;
        int m = dist.count(k);
        if (k == k1) --m; // the top vertex answers to the dragon-king test instead
        if (m <= 0) continue;
        double lam = expected_count(fit, dist.n_vertices, k);
        double var = fit.residual_stddev * fit.residual_stddev + 1.0 / m;
        double z = std::log(m / lam) / std::sqrt(var);
        if (z > th.z_hub) total += m;
    }
    return total;
}

PhaseLabel classify(const WindowMetrics& m, const Thresholds& th) {
    const PowerLawFit* fit = m.fit ? &*m.fit : nullptr;
    PhaseLabel out;
    out.n_outlier_hubs = fit ? count_outlier_hubs(m.degree_distribution, *fit, th) : 0;
    if (detect_dragon_king(m.degree_distribution, fit, th)) {
        out.kind = PhaseKind::Superstar;
        out.dragon_king = m.central_vertex;
        return out;
    }
    if (out.n_outlier_hubs >= th.h_min) {
        out.kind = PhaseKind::DecoratedScaleFree;
        return out;
    }
    if (fit && fit->gamma > 0 && fit->std_error / fit->gamma <= th.rel_err_max) {
        out.kind = PhaseKind::ScaleFree;
        return out;
    }
    out.kind = PhaseKind::Indeterminate;
    return out;
}

std::vector<PhaseKind> smooth_labels(const std::vector<PhaseKind>& labels,
                                     int w_smooth) {
    if (w_smooth < 1 || w_smooth % 2 == 0)
        throw DataError("w_smooth must be a positive odd number");
    const long n = static_cast<long>(labels.size());
    const long h = w_smooth / 2;
    std::vector<PhaseKind> out(labels.size());
    for (long i = 0; i < n; ++i) {
        std::array<int, 4> votes{};
        long lo = std::max(0L, i - h), hi = std::min(n - 1, i + h);
        for (long j = lo; j <= hi; ++j) ++votes[static_cast<size_t>(labels[j])];
        int best = 0;
        for (int v : votes) best = std::max(best, v);
        int winners = 0;
        size_t winner = 0;
        for (size_t k = 0; k < votes.size(); ++k)
            if (votes[k] == best) {
                ++winners;
                winner = k;
            }
        out[i] = winners == 1 ? static_cast<PhaseKind>(winner) : labels[i];
    }
    return out;
}

std::vector<TransitionEvent> transitions(const std::vector<PhaseKind>& labels,
                                         int w_smooth) {
    auto sm = smooth_labels(labels, w_smooth);
    std::vector<TransitionEvent> out;
    for (size_t i = 1; i < sm.size(); ++i)
        if (sm[i] != sm[i - 1]) out.push_back({i, sm[i - 1], sm[i]});
    return out;
}

} // namespace mstphase
