#include "mstphase/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mstphase/common.hpp"

namespace mstphase {

int DegreeDistribution::count(int k) const {
    auto it = std::lower_bound(support.begin(), support.end(), k);
    if (it == support.end() || *it != k) return 0;
    double c = f[static_cast<size_t>(it - support.begin())] * n_vertices;
    return static_cast<int>(std::lround(c));
}

DegreeDistribution degree_distribution(const std::vector<int>& degs) {
    if (degs.empty()) throw DataError("degree_distribution: empty input");
    std::map<int, int> counts;
    for (int d : degs) ++counts[d];
    DegreeDistribution out;
    out.n_vertices = static_cast<int>(degs.size());
    for (auto [k, c] : counts) {
        out.support.push_back(k);
        out.f.push_back(static_cast<double>(c) / static_cast<double>(out.n_vertices));
    }
    return out;
}

PowerLawFit fit_power_law(const DegreeDistribution& dist, int lo, int hi) {
    std::vector<double> x, y;
    for (size_t i = 0; i < dist.support.size(); ++i) {
        int k = dist.support[i];
        if (k < lo || k > hi || dist.f[i] <= 0) continue;
        x.push_back(std::log(static_cast<double>(k)));
        y.push_back(std::log(dist.f[i]));
    }
    size_t n = x.size();
    if (n < 2) throw DataError("fit_power_law: fewer than 2 points with f(k) > 0 in fit range");

    double xm = 0, ym = 0;
    for (size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    double slope = sxy / sxx;
    double intercept = ym - slope * xm;
    double ssr = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - (slope * x[i] + intercept);
        ssr += r * r;
    }
    double s2 = n > 2 ? ssr / static_cast<double>(n - 2) : 0.0;

    PowerLawFit fit;
    fit.gamma = -slope;
    fit.std_error = std::sqrt(s2 / sxx);
    fit.log_c = intercept;
    fit.residual_stddev = std::sqrt(s2);
    fit.fit_lo = lo;
    fit.fit_hi = hi;
    fit.n_points = static_cast<int>(n);
    return fit;
}

double expected_count(const PowerLawFit& fit, int n_vertices, int k) {
    return n_vertices * std::exp(fit.log_c) * std::pow(static_cast<double>(k), -fit.gamma);
}

size_t central_vertex(const Tree& t) {
    if (t.n() == 0) throw DataError("central_vertex: empty tree");
    auto deg = degrees(t);
    int kmax = *std::max_element(deg.begin(), deg.end());
    size_t best = t.n();
    long best_sum = 0;
    for (size_t v = 0; v < t.n(); ++v) {
        if (deg[v] != kmax) continue;
        auto lev = levels(t, v);
        long sum = 0;
        for (int l : lev) sum += l;
        if (best == t.n() || sum < best_sum ||
            (sum == best_sum && t.tickers[v] < t.tickers[best])) {
            best = v;
            best_sum = sum;
        }
    }
    return best;
}

double mean_occupation_layer(const Tree& t, size_t center) {
    if (t.n() < 2) throw DataError("mean_occupation_layer needs N >= 2");
    if (center >= t.n()) throw DataError("mean_occupation_layer: center not in tree");
    auto lev = levels(t, center);
    long sum = 0;
    for (int l : lev) sum += l;
    return static_cast<double>(sum) / static_cast<double>(t.n() - 1);
}

double degree_entropy(const DegreeDistribution& dist) {
    double s = 0;
    for (double p : dist.f)
        if (p > 0) s -= p * std::log(p);
    return s;
}

double efficient_entropy(const Tree& t) {
    if (t.n() < 2) throw DataError("efficient_entropy needs N >= 2");
    constexpr double epsilon_d = 1e-9;
    std::vector<double> inv(t.n(), 0.0);
    double norm = 0;
    for (const auto& e : t.edges) {
        if (e.w < epsilon_d)
            throw DataError("efficient_entropy: edge weight below 1e-9 between " +
                            t.tickers[e.i] + " and " + t.tickers[e.j]);
        double iw = 1.0 / e.w;
        inv[e.i] += iw;
        inv[e.j] += iw;
        norm += 2.0 * iw;
    }
    double s = 0;
    for (double v : inv) {
        double p = v / norm;
        if (p > 0) s -= p * std::log(p);
    }
    return s;
}

double mean_tree_length(const Tree& t) {
    if (t.n() < 2) throw DataError("mean_tree_length needs N >= 2");
    return t.total_weight() / static_cast<double>(t.edges.size());
}

std::pair<int, int> degree_gaps(const std::vector<int>& degs) {
    if (degs.size() < 3) throw DataError("degree_gaps needs N >= 3");
    std::vector<int> top = degs;
    std::partial_sort(top.begin(), top.begin() + 3, top.end(), std::greater<>());
    return {top[0] - top[1], top[1] - top[2]};
}

const char* to_string(PhaseKind k) {
    switch (k) {
        case PhaseKind::ScaleFree: return "ScaleFree";
        case PhaseKind::Superstar: return "Superstar";
        case PhaseKind::DecoratedScaleFree: return "DecoratedScaleFree";
        case PhaseKind::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

PhaseKind phase_kind_from(const std::string& s) {
    if (s == "ScaleFree") return PhaseKind::ScaleFree;
    if (s == "Superstar") return PhaseKind::Superstar;
    if (s == "DecoratedScaleFree") return PhaseKind::DecoratedScaleFree;
    if (s == "Indeterminate") return PhaseKind::Indeterminate;
    throw DataError("unknown phase label: " + s);
}

}  // namespace mstphase
