#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstphase/mst.hpp"

namespace mstphase {

// f(k) = fraction of vertices with degree k, over occurring degrees only.
struct DegreeDistribution {
    std::vector<int> support;  // ascending
    std::vector<double> f;
    int n_vertices = 0;

    // vertex count at degree k (0 if absent)
    int count(int k) const;
    int k_max() const { return support.empty() ? 0 : support.back(); }
};

DegreeDistribution degree_distribution(const std::vector<int>& degs);

// OLS of ln f(k) on ln k; gamma = -slope (f(k) ~ k^-gamma).
struct PowerLawFit {
    double gamma = 0;
    double std_error = 0;        // standard error of gamma ("stderr" in serialized form)
    double log_c = 0;            // intercept: f_hat(k) = exp(log_c) * k^-gamma
    double residual_stddev = 0;  // spread of log residuals around the fitted line
    int fit_lo = 2, fit_hi = 10;
    int n_points = 0;
};

// Fits over integer degrees in [lo,hi] with f(k) > 0. Throws DataError when fewer
// than 2 points qualify (distribution too degenerate to fit).
PowerLawFit fit_power_law(const DegreeDistribution& dist, int lo = 2, int hi = 10);

// Expected vertex count the fitted law assigns to degree k.
double expected_count(const PowerLawFit& fit, int n_vertices, int k);

// Maximal-degree vertex; ties broken by smaller total hop distance to all other
// vertices, then lexicographically smaller ticker. Returns a vertex index.
size_t central_vertex(const Tree& t);

// Mean hop count from center over the other N-1 vertices; pure star at center = 1.
double mean_occupation_layer(const Tree& t, size_t center);

// S_deg = -sum_k f(k) ln f(k), in nats.
double degree_entropy(const DegreeDistribution& dist);

// S_eff = -sum_i P(i) ln P(i) with P(i) = (sum_{j~i} 1/d(i,j)) / Norm and
// Norm = sum_i sum_{j~i} 1/d(i,j). Throws DataError when an edge weight is
// below 1e-9 (near-duplicate assets).
double efficient_entropy(const Tree& t);

double mean_tree_length(const Tree& t);

// (k1-k2, k2-k3) for the three largest degrees with multiplicity; needs N >= 3.
std::pair<int, int> degree_gaps(const std::vector<int>& degs);

enum class PhaseKind { ScaleFree, Superstar, DecoratedScaleFree, Indeterminate };

const char* to_string(PhaseKind k);
PhaseKind phase_kind_from(const std::string& s);

struct PhaseLabel {
    PhaseKind kind = PhaseKind::Indeterminate;
    std::optional<std::string> dragon_king;  // present iff kind == Superstar
    int n_outlier_hubs = 0;
};

// Everything measured on one window's MST.
struct WindowMetrics {
    std::string window_start, window_end;
    int n_vertices = 0;
    DegreeDistribution degree_distribution;
    std::optional<PowerLawFit> fit;  // absent when the distribution is too degenerate
    double mol_dynamic = 0;
    std::optional<double> mol_static;
    double s_deg = 0, s_eff = 0;
    double mean_tree_length = 0;
    int k1 = 0, k2 = 0, k3 = 0;
    std::string central_vertex;
    PhaseLabel phase;
};

}  // namespace mstphase
