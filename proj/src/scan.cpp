#include "mstphase/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "mstphase/common.hpp"
#include "mstphase/correlation.hpp"

namespace mstphase {

WindowAnalysis analyze_window(const PricePanel& panel, const ScanConfig& cfg,
                              size_t index, size_t start) {
    WindowAnalysis out;
    WindowRecord& rec = out.record;
    rec.index = index;
    rec.window_start = panel.dates[start];
    rec.window_end = panel.dates[start + cfg.window_length - 1];

    auto survivors = window_survivors(panel, start, cfg.window_length, cfg.gap_limit);
    if (!cfg.exclude.empty()) {
        std::set<std::string> drop(cfg.exclude.begin(), cfg.exclude.end());
        std::erase_if(survivors,
                      [&](size_t t) { return drop.count(panel.tickers[t]) > 0; });
    }

    CorrelationMatrix corr;
    bool have_corr = false;
    for (int attempt = 0; attempt < 10 && survivors.size() >= 3; ++attempt) {
        auto returns = log_returns(panel, survivors, start, cfg.window_length,
                                   cfg.detrend);
        try {
            corr = pearson_matrix(returns);
            have_corr = true;
            break;
        } catch (const ZeroVarianceError& e) {
            std::set<std::string> drop(e.tickers.begin(), e.tickers.end());
            size_t before = survivors.size();
            std::erase_if(survivors,
                          [&](size_t t) { return drop.count(panel.tickers[t]) > 0; });
            if (survivors.size() == before) throw; // names not ours: broken input
        }
    }
    rec.n_survivors = static_cast<int>(survivors.size());
    if (survivors.size() < 3) {
        rec.skipped = true;
        rec.skip_reason = "fewer than 3 survivors";
        return out;
    }
    if (!have_corr)
        throw DataError("window starting " + rec.window_start +
                        ": constant-return tickers persisted through 10 retries");

    Tree tree = prim_mst(to_distance(corr));

    WindowMetrics m;
    m.window_start = rec.window_start;
    m.window_end = rec.window_end;
    m.n_vertices = static_cast<int>(tree.n());
    auto degs = degrees(tree);
    m.degree_distribution = degree_distribution(degs);
    try {
        m.fit = fit_power_law(m.degree_distribution, cfg.fit_lo, cfg.fit_hi);
    } catch (const DataError&) {
        m.fit = std::nullopt;
    }
    size_t center = central_vertex(tree);
    m.central_vertex = tree.tickers[center];
    m.mol_dynamic = mean_occupation_layer(tree, center);
    if (cfg.static_center) {
        auto it = std::lower_bound(tree.tickers.begin(), tree.tickers.end(),
                                   *cfg.static_center);
        if (it != tree.tickers.end() && *it == *cfg.static_center)
            m.mol_static = mean_occupation_layer(
                tree, static_cast<size_t>(it - tree.tickers.begin()));
    }
    m.s_deg = degree_entropy(m.degree_distribution);
    m.s_eff = efficient_entropy(tree);
    m.mean_tree_length = mean_tree_length(tree);
    std::vector<int> top = degs;
    std::partial_sort(top.begin(), top.begin() + 3, top.end(), std::greater<>());
    m.k1 = top[0];
    m.k2 = top[1];
    m.k3 = top[2];
    m.phase = classify(m, cfg.thresholds);
    rec.metrics = std::move(m);
    out.tree = std::move(tree);
    return out;
}

ScanSeries run_scan(const PricePanel& panel, const ScanConfig& cfg) {
    if (cfg.window_length < 30) throw DataError("window length must be at least 30");
    if (cfg.step < 1 || cfg.step > cfg.window_length)
        throw DataError("step must be in [1, window length]");
    if (panel.n_days() < cfg.window_length)
        throw DataError("panel shorter than one window");
    if (cfg.threads < 1) throw DataError("threads must be at least 1");

    std::vector<size_t> starts;
    for (size_t s = 0; s + cfg.window_length <= panel.n_days(); s += cfg.step)
        starts.push_back(s);

    ScanSeries series;
    series.config = cfg;
    series.records.resize(starts.size());
    if (cfg.keep_trees) series.trees.resize(starts.size());

    auto work_one = [&](size_t i) {
        auto res = analyze_window(panel, cfg, i, starts[i]);
        series.records[i] = std::move(res.record);
        if (cfg.keep_trees) series.trees[i] = std::move(res.tree);
    };

    size_t n_threads = std::min<size_t>(static_cast<size_t>(cfg.threads), starts.size());
    if (n_threads <= 1) {
        for (size_t i = 0; i < starts.size(); ++i) work_one(i);
        return series;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < n_threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= starts.size()) return;
                try {
                    work_one(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(starts.size());
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return series;
}

size_t absolute_minimum(const ScanSeries& series, const std::string& metric) {
    auto value = [&](const WindowMetrics& m) -> std::optional<double> {
        if (metric == "mol_dynamic") return m.mol_dynamic;
        if (metric == "mol_static") return m.mol_static;
        if (metric == "s_deg") return m.s_deg;
        if (metric == "s_eff") return m.s_eff;
        if (metric == "mean_tree_length") return m.mean_tree_length;
        throw DataError("unknown metric: " + metric);
    };
    std::optional<size_t> best;
    double best_v = 0;
    for (const auto& rec : series.records) {
        if (rec.skipped) continue;
        auto v = value(*rec.metrics);
        if (!v) continue;
        if (!best || *v < best_v) {
            best = rec.index;
            best_v = *v;
        }
    }
    if (!best) throw DataError("no window provides metric " + metric);
    return *best;
}

std::vector<std::pair<std::string, std::string>>
coincidence_intervals(const ScanSeries& series) {
    if (!series.config.static_center)
        throw DataError("coincidence intervals need a configured static center");
    double tol = series.config.coincidence_tol;
    std::vector<std::pair<std::string, std::string>> out;
    const WindowRecord* run_first = nullptr;
    const WindowRecord* run_last = nullptr;
    auto flush = [&] {
        if (run_first) out.emplace_back(run_first->window_start, run_last->window_end);
        run_first = run_last = nullptr;
    };
    for (const auto& rec : series.records) {
        bool hit = !rec.skipped && rec.metrics->mol_static &&
                   std::fabs(*rec.metrics->mol_static - rec.metrics->mol_dynamic) <= tol;
        if (hit) {
            if (!run_first) run_first = &rec;
            run_last = &rec;
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::vector<SeriesTransition> series_transitions(const ScanSeries& series) {
    std::vector<PhaseKind> labels;
    std::vector<size_t> indices;
    for (const auto& rec : series.records) {
        if (rec.skipped) continue;
        labels.push_back(rec.metrics->phase.kind);
        indices.push_back(rec.index);
    }
    auto events = transitions(labels, series.config.thresholds.w_smooth);
    std::vector<SeriesTransition> out;
    for (const auto& e : events) {
        SeriesTransition t;
        t.index = indices[e.index];
        t.window_start = series.records[t.index].window_start;
        t.from = e.from;
        t.to = e.to;
        out.push_back(t);
    }
    return out;
}

} // namespace mstphase
