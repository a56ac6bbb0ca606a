#include "mstphase/synth.hpp"

#include <algorithm>
#include <cstdio>

#include "mstphase/common.hpp"

namespace mstphase {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : d[m - 1];
}

std::string index_ticker(char prefix, size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%c%04zu", prefix, i);
    return buf;
}

} // namespace

// 2005-01-03 is a Monday
std::vector<std::string> weekday_dates(size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    int y = 2005, m = 1, d = 3, dow = 0; // 0 = Monday
    while (out.size() < n) {
        if (dow < 5) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
            out.emplace_back(buf);
        }
        dow = (dow + 1) % 7;
        if (++d > days_in_month(y, m)) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
    }
    return out;
}

PricePanel gen_factor_market(const FactorMarketSpec& spec) {
    if (spec.n_assets < 3) throw DataError("factor market needs at least 3 assets");
    if (spec.n_assets > 9999) throw DataError("factor market supports at most 9999 assets");
    if (spec.n_days < 2) throw DataError("factor market needs at least 2 days");
    if (spec.betas.size() != spec.n_assets)
        throw DataError("betas must have one entry per asset");
    if (!(spec.sigma_idio > 0) || !(spec.sigma_market > 0))
        throw DataError("volatilities must be positive");

    size_t n = spec.n_assets, days = spec.n_days;
    Rng rng(spec.seed);
    std::vector<double> returns((days - 1) * n);
    for (size_t t = 0; t + 1 < days; ++t) {
        double m = spec.sigma_market * rng.normal();
        for (size_t i = 0; i < n; ++i)
            returns[t * n + i] = spec.betas[i] * m + spec.sigma_idio * rng.normal();
    }

    PricePanel p;
    p.dates = weekday_dates(days);
    for (size_t i = 0; i < n; ++i) p.tickers.push_back(index_ticker('S', i));
    p.prices.assign(days * n, 1.0);
    for (size_t t = 1; t < days; ++t)
        for (size_t i = 0; i < n; ++i)
            p.at(t, i) = p.at(t - 1, i) * std::exp(returns[(t - 1) * n + i]);
    return p;
}

PricePanel inject_superhub(const PricePanel& panel, const SuperhubInjection& inj) {
    size_t n = panel.n_tickers(), days = panel.n_days();
    if (inj.target >= n) throw DataError("injection target out of range");
    if (!(inj.rho >= 0 && inj.rho < 1)) throw DataError("rho must be in [0,1)");
    if (inj.breadth > n - 1) throw DataError("breadth exceeds available assets");
    if (inj.start_day >= inj.end_day || inj.end_day >= days)
        throw DataError("injection window must satisfy start < end within the panel");
    for (size_t t = 0; t < days; ++t)
        for (size_t i = 0; i < n; ++i)
            if (panel.missing(t, i))
                throw DataError("injection requires a complete panel");
    if (inj.rho == 0) return panel;

    std::vector<size_t> coupled;
    for (size_t j = 0; j < n && coupled.size() < inj.breadth; ++j)
        if (j != inj.target) coupled.push_back(j);

    std::vector<double> r((days - 1) * n);
    for (size_t t = 0; t + 1 < days; ++t)
        for (size_t i = 0; i < n; ++i)
            r[t * n + i] = std::log(panel.at(t + 1, i)) - std::log(panel.at(t, i));

    std::vector<size_t> first_change(n, days); // sentinel: nothing changed
    double a = std::sqrt(1.0 - inj.rho * inj.rho);
    for (size_t t = 0; t + 1 < days; ++t) {
        size_t day = t + 1;
        if (day <= inj.start_day || day > inj.end_day) continue;
        double rt = r[t * n + inj.target];
        for (size_t j : coupled) {
            double blended = a * r[t * n + j] + inj.rho * rt;
            if (blended != r[t * n + j] && first_change[j] == days)
                first_change[j] = t;
            r[t * n + j] = blended;
        }
    }

    PricePanel out = panel;
    for (size_t i = 0; i < n; ++i)
        for (size_t t = first_change[i]; t + 1 < days; ++t)
            out.at(t + 1, i) = out.at(t, i) * std::exp(r[t * n + i]);
    return out;
}

Tree gen_pa_tree(size_t n, uint64_t seed) {
    if (n < 2) throw DataError("preferential-attachment tree needs at least 2 vertices");
    if (n > 9999) throw DataError("preferential-attachment tree supports at most 9999 vertices");
    Tree t;
    for (size_t i = 0; i < n; ++i) t.tickers.push_back(index_ticker('V', i));
    Rng rng(seed);
    std::vector<size_t> endpoints = {0, 1};
    t.edges.push_back({0, 1, 1.0});
    for (size_t v = 2; v < n; ++v) {
        size_t u = endpoints[rng.next_u64() % endpoints.size()];
        t.edges.push_back({u, v, 1.0});
        endpoints.push_back(u);
        endpoints.push_back(v);
    }
    return t;
}

} // namespace mstphase
