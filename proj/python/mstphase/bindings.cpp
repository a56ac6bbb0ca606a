#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "mstphase/correlation.hpp"
#include "mstphase/metrics.hpp"
#include "mstphase/mst.hpp"
#include "mstphase/panel.hpp"
#include "mstphase/phase.hpp"
#include "mstphase/scan.hpp"
#include "mstphase/synth.hpp"

namespace py = pybind11;
using namespace mstphase;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PricePanel panel_from_prices(const Array& prices) {
    auto buf = prices.unchecked<2>();
    PricePanel p;
    size_t days = static_cast<size_t>(buf.shape(0));
    size_t n = static_cast<size_t>(buf.shape(1));
    p.dates = weekday_dates(days);
    for (size_t i = 0; i < n; ++i) {
        char t[8];
        std::snprintf(t, sizeof t, "S%04zu", i);
        p.tickers.push_back(t);
    }
    p.prices.resize(days * n);
    for (size_t d = 0; d < days; ++d)
        for (size_t i = 0; i < n; ++i) p.at(d, i) = buf(static_cast<long>(d), static_cast<long>(i));
    return p;
}

Array prices_to_array(const PricePanel& p) {
    Array out({p.n_days(), p.n_tickers()});
    auto buf = out.mutable_unchecked<2>();
    for (size_t d = 0; d < p.n_days(); ++d)
        for (size_t t = 0; t < p.n_tickers(); ++t)
            buf(static_cast<long>(d), static_cast<long>(t)) = p.at(d, t);
    return out;
}

DistanceMatrix distance_from_array(const Array& a) {
    auto buf = a.unchecked<2>();
    if (buf.shape(0) != buf.shape(1)) throw DataError("distance matrix must be square");
    size_t n = static_cast<size_t>(buf.shape(0));
    DistanceMatrix D;
    for (size_t i = 0; i < n; ++i) {
        char t[8];
        std::snprintf(t, sizeof t, "S%04zu", i);
        D.tickers.push_back(t);
    }
    D.d.resize(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) D.at(i, j) = buf(static_cast<long>(i), static_cast<long>(j));
    return D;
}

py::dict metrics_dict(const WindowMetrics& m) {
    py::dict d;
    d["window_start"] = m.window_start;
    d["window_end"] = m.window_end;
    d["n_vertices"] = m.n_vertices;
    d["k1"] = m.k1;
    d["k2"] = m.k2;
    d["k3"] = m.k3;
    if (m.fit) {
        d["gamma"] = m.fit->gamma;
        d["stderr"] = m.fit->std_error;
    } else {
        d["gamma"] = py::none();
        d["stderr"] = py::none();
    }
    d["mol_dynamic"] = m.mol_dynamic;
    d["mol_static"] = m.mol_static ? py::cast(*m.mol_static) : py::none().cast<py::object>();
    d["s_deg"] = m.s_deg;
    d["s_eff"] = m.s_eff;
    d["mean_tree_length"] = m.mean_tree_length;
    d["central_vertex"] = m.central_vertex;
    d["phase"] = std::string(to_string(m.phase.kind));
    d["dragon_king"] =
        m.phase.dragon_king ? py::cast(*m.phase.dragon_king) : py::none().cast<py::object>();
    d["n_outlier_hubs"] = m.phase.n_outlier_hubs;
    return d;
}

WindowMetrics analyze_tree(const Tree& tree, int fit_lo, int fit_hi,
                           const Thresholds& th) {
    WindowMetrics m;
    m.n_vertices = static_cast<int>(tree.n());
    auto degs = degrees(tree);
    m.degree_distribution = degree_distribution(degs);
    try {
        m.fit = fit_power_law(m.degree_distribution, fit_lo, fit_hi);
    } catch (const DataError&) {
    }
    size_t center = central_vertex(tree);
    m.central_vertex = tree.tickers[center];
    m.mol_dynamic = mean_occupation_layer(tree, center);
    m.s_deg = degree_entropy(m.degree_distribution);
    m.s_eff = efficient_entropy(tree);
    m.mean_tree_length = mean_tree_length(tree);
    std::vector<int> top = degs;
    std::sort(top.begin(), top.end(), std::greater<>());
    m.k1 = top[0];
    m.k2 = top.size() > 1 ? top[1] : 0;
    m.k3 = top.size() > 2 ? top[2] : 0;
    m.phase = classify(m, th);
    return m;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "correlation-MST phase analysis";

    py::register_exception<DataError>(mod, "DataError");

    mod.def(
        "gen_market",
        [](size_t n_assets, size_t n_days, double beta, double sigma_market,
           double sigma_idio, uint64_t seed) {
            FactorMarketSpec spec;
            spec.n_assets = n_assets;
            spec.n_days = n_days;
            spec.betas.assign(n_assets, beta);
            spec.sigma_market = sigma_market;
            spec.sigma_idio = sigma_idio;
            spec.seed = seed;
            return prices_to_array(gen_factor_market(spec));
        },
        py::arg("n_assets"), py::arg("n_days"), py::arg("beta") = 1.0,
        py::arg("sigma_market") = 0.01, py::arg("sigma_idio") = 0.02,
        py::arg("seed") = 0,
        "factor-market close prices, days x assets");

    mod.def(
        "inject",
        [](const Array& prices, size_t target, size_t start_day, size_t end_day,
           double rho, size_t breadth) {
            SuperhubInjection inj{target, start_day, end_day, rho, breadth};
            return prices_to_array(inject_superhub(panel_from_prices(prices), inj));
        },
        py::arg("prices"), py::arg("target"), py::arg("start_day"),
        py::arg("end_day"), py::arg("rho"), py::arg("breadth"),
        "blend returns toward the target inside the window");

    mod.def(
        "log_returns",
        [](const Array& prices, bool detrend) {
            auto panel = panel_from_prices(prices);
            std::vector<size_t> all(panel.n_tickers());
            for (size_t i = 0; i < all.size(); ++i) all[i] = i;
            auto rp = log_returns(panel, all, 0, panel.n_days(), detrend);
            Array out({rp.n_rows(), rp.n_cols()});
            auto buf = out.mutable_unchecked<2>();
            for (size_t r = 0; r < rp.n_rows(); ++r)
                for (size_t c = 0; c < rp.n_cols(); ++c)
                    buf(static_cast<long>(r), static_cast<long>(c)) = rp.at(r, c);
            return out;
        },
        py::arg("prices"), py::arg("detrend") = true);

    mod.def(
        "pearson",
        [](const Array& returns) {
            auto buf = returns.unchecked<2>();
            ReturnPanel rp;
            size_t rows = static_cast<size_t>(buf.shape(0));
            size_t cols = static_cast<size_t>(buf.shape(1));
            rp.dates = weekday_dates(rows);
            for (size_t i = 0; i < cols; ++i) {
                char t[8];
                std::snprintf(t, sizeof t, "S%04zu", i);
                rp.tickers.push_back(t);
            }
            rp.returns.resize(rows * cols);
            for (size_t r = 0; r < rows; ++r)
                for (size_t c = 0; c < cols; ++c)
                    rp.at(r, c) = buf(static_cast<long>(r), static_cast<long>(c));
            auto C = pearson_matrix(rp);
            Array out({C.n(), C.n()});
            auto o = out.mutable_unchecked<2>();
            for (size_t i = 0; i < C.n(); ++i)
                for (size_t j = 0; j < C.n(); ++j)
                    o(static_cast<long>(i), static_cast<long>(j)) = C.at(i, j);
            return out;
        },
        py::arg("returns"));

    mod.def(
        "to_distance",
        [](const Array& corr) {
            auto buf = corr.unchecked<2>();
            CorrelationMatrix C;
            size_t n = static_cast<size_t>(buf.shape(0));
            C.tickers.resize(n);
            C.c.resize(n * n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    C.at(i, j) = buf(static_cast<long>(i), static_cast<long>(j));
            auto D = to_distance(C);
            Array out({n, n});
            auto o = out.mutable_unchecked<2>();
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    o(static_cast<long>(i), static_cast<long>(j)) = D.at(i, j);
            return out;
        },
        py::arg("corr"), "d = sqrt(2(1-C))");

    mod.def(
        "prim_mst",
        [](const Array& dist) {
            auto tree = prim_mst(distance_from_array(dist));
            std::vector<std::tuple<size_t, size_t, double>> edges;
            for (const auto& e : tree.edges) edges.emplace_back(e.i, e.j, e.w);
            return edges;
        },
        py::arg("dist"), "MST edges as (i, j, weight) with i < j");

    mod.def(
        "analyze_distance_matrix",
        [](const Array& dist, int fit_lo, int fit_hi) {
            auto tree = prim_mst(distance_from_array(dist));
            return metrics_dict(analyze_tree(tree, fit_lo, fit_hi, Thresholds{}));
        },
        py::arg("dist"), py::arg("fit_lo") = 2, py::arg("fit_hi") = 10,
        "MST metrics and phase label for one distance matrix");

    mod.def(
        "gen_pa_tree",
        [](size_t n, uint64_t seed) {
            auto tree = gen_pa_tree(n, seed);
            std::vector<std::pair<size_t, size_t>> edges;
            for (const auto& e : tree.edges) edges.emplace_back(e.i, e.j);
            return edges;
        },
        py::arg("n"), py::arg("seed"),
        "preferential-attachment tree edges");

    mod.def(
        "scan_prices",
        [](const Array& prices, size_t window, size_t step, int threads) {
            auto panel = panel_from_prices(prices);
            ScanConfig cfg;
            cfg.window_length = window;
            cfg.step = step;
            cfg.threads = threads;
            auto series = run_scan(panel, cfg);
            py::list out;
            for (const auto& rec : series.records) {
                if (rec.skipped) {
                    py::dict d;
                    d["window_start"] = rec.window_start;
                    d["window_end"] = rec.window_end;
                    d["skipped"] = true;
                    out.append(d);
                } else {
                    auto d = metrics_dict(*rec.metrics);
                    d["skipped"] = false;
                    out.append(d);
                }
            }
            return out;
        },
        py::arg("prices"), py::arg("window"), py::arg("step") = 1,
        py::arg("threads") = 1, "rolling-window scan over a complete price matrix");

    mod.attr("__version__") = version();
}
