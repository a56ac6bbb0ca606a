#include "mstphase/series_io.hpp"

#include <fstream>
#include <ostream>
#include <vector>

#include "mstphase/common.hpp"

namespace mstphase {

using nlohmann::json;

void write_series_csv(const ScanSeries& series, std::ostream& out) {
    out << "window_start,window_end,skipped,n_vertices,k1,k2,k3,gamma,stderr,"
           "n_points,mol_dynamic,mol_static,s_deg,s_eff,mean_tree_length,"
           "central_vertex,phase,dragon_king,n_outlier_hubs\n";
    for (const auto& rec : series.records) {
        out << rec.window_start << ',' << rec.window_end << ','
            << (rec.skipped ? "true" : "false") << ',';
        if (rec.skipped) {
            out << std::string(15, ','); // 16 empty fields
            out << '\n';
            continue;
        }
        const WindowMetrics& m = *rec.metrics;
        out << m.n_vertices << ',' << m.k1 << ',' << m.k2 << ',' << m.k3 << ',';
        if (m.fit)
            out << fmt17(m.fit->gamma) << ',' << fmt17(m.fit->std_error) << ','
                << m.fit->n_points << ',';
        else
            out << ",,,";
        out << fmt17(m.mol_dynamic) << ',';
        if (m.mol_static) out << fmt17(*m.mol_static);
        out << ',' << fmt17(m.s_deg) << ',' << fmt17(m.s_eff) << ','
            << fmt17(m.mean_tree_length) << ',' << m.central_vertex << ','
            << to_string(m.phase.kind) << ',';
        if (m.phase.dragon_king) out << *m.phase.dragon_king;
        out << ',' << m.phase.n_outlier_hubs << '\n';
    }
}

namespace {

json thresholds_to_json(const Thresholds& th) {
    return {{"r_gap", th.r_gap},   {"p_tail", th.p_tail},
            {"z_hub", th.z_hub},   {"rel_err_max", th.rel_err_max},
            {"h_min", th.h_min},   {"w_smooth", th.w_smooth}};
}

Thresholds thresholds_from_json(const json& j) {
    Thresholds th;
    th.r_gap = j.at("r_gap").get<double>();
    th.p_tail = j.at("p_tail").get<double>();
    th.z_hub = j.at("z_hub").get<double>();
    th.rel_err_max = j.at("rel_err_max").get<double>();
    th.h_min = j.at("h_min").get<int>();
    th.w_smooth = j.at("w_smooth").get<int>();
    return th;
}

json config_to_json(const ScanConfig& cfg) {
    json j{{"window_length", cfg.window_length},
           {"step", cfg.step},
           {"gap_limit", cfg.gap_limit},
           {"fit_range", {cfg.fit_lo, cfg.fit_hi}},
           {"detrend", cfg.detrend},
           {"exclude", cfg.exclude},
           {"coincidence_tol", cfg.coincidence_tol},
           {"thresholds", thresholds_to_json(cfg.thresholds)}};
    j["static_center"] = cfg.static_center ? json(*cfg.static_center) : json();
    return j;
}

ScanConfig config_from_json(const json& j) {
    ScanConfig cfg;
    cfg.window_length = j.at("window_length").get<size_t>();
    cfg.step = j.at("step").get<size_t>();
    cfg.gap_limit = j.at("gap_limit").get<size_t>();
    cfg.fit_lo = j.at("fit_range")[0].get<int>();
    cfg.fit_hi = j.at("fit_range")[1].get<int>();
    cfg.detrend = j.at("detrend").get<bool>();
    if (!j.at("static_center").is_null())
        cfg.static_center = j.at("static_center").get<std::string>();
    cfg.exclude = j.at("exclude").get<std::vector<std::string>>();
    cfg.coincidence_tol = j.at("coincidence_tol").get<double>();
    cfg.thresholds = thresholds_from_json(j.at("thresholds"));
    return cfg;
}

} // namespace

json metrics_to_json(const WindowMetrics& m) {
    json j{{"n_vertices", m.n_vertices},
           {"degree_distribution",
            {{"support", m.degree_distribution.support},
             {"f", m.degree_distribution.f}}},
           {"mol_dynamic", m.mol_dynamic},
           {"s_deg", m.s_deg},
           {"s_eff", m.s_eff},
           {"mean_tree_length", m.mean_tree_length},
           {"k1", m.k1},
           {"k2", m.k2},
           {"k3", m.k3},
           {"central_vertex", m.central_vertex},
           {"phase",
            {{"kind", to_string(m.phase.kind)},
             {"n_outlier_hubs", m.phase.n_outlier_hubs}}}};
    j["mol_static"] = m.mol_static ? json(*m.mol_static) : json();
    j["phase"]["dragon_king"] =
        m.phase.dragon_king ? json(*m.phase.dragon_king) : json();
    if (m.fit)
        j["fit"] = {{"gamma", m.fit->gamma},
                    {"stderr", m.fit->std_error},
                    {"log_c", m.fit->log_c},
                    {"residual_stddev", m.fit->residual_stddev},
                    {"fit_range", {m.fit->fit_lo, m.fit->fit_hi}},
                    {"n_points", m.fit->n_points}};
    else
        j["fit"] = json();
    return j;
}

namespace {

WindowMetrics metrics_from_json(const json& j, const std::string& start,
                                const std::string& end) {
    WindowMetrics m;
    m.window_start = start;
    m.window_end = end;
    m.n_vertices = j.at("n_vertices").get<int>();
    m.degree_distribution.support =
        j.at("degree_distribution").at("support").get<std::vector<int>>();
    m.degree_distribution.f =
        j.at("degree_distribution").at("f").get<std::vector<double>>();
    m.degree_distribution.n_vertices = m.n_vertices;
    if (!j.at("fit").is_null()) {
        PowerLawFit f;
        const json& jf = j.at("fit");
        f.gamma = jf.at("gamma").get<double>();
        f.std_error = jf.at("stderr").get<double>();
        f.log_c = jf.at("log_c").get<double>();
        f.residual_stddev = jf.at("residual_stddev").get<double>();
        f.fit_lo = jf.at("fit_range")[0].get<int>();
        f.fit_hi = jf.at("fit_range")[1].get<int>();
        f.n_points = jf.at("n_points").get<int>();
        m.fit = f;
    }
    m.mol_dynamic = j.at("mol_dynamic").get<double>();
    if (!j.at("mol_static").is_null())
        m.mol_static = j.at("mol_static").get<double>();
    m.s_deg = j.at("s_deg").get<double>();
    m.s_eff = j.at("s_eff").get<double>();
    m.mean_tree_length = j.at("mean_tree_length").get<double>();
    m.k1 = j.at("k1").get<int>();
    m.k2 = j.at("k2").get<int>();
    m.k3 = j.at("k3").get<int>();
    m.central_vertex = j.at("central_vertex").get<std::string>();
    const json& jp = j.at("phase");
    m.phase.kind = phase_kind_from(jp.at("kind").get<std::string>());
    if (!jp.at("dragon_king").is_null())
        m.phase.dragon_king = jp.at("dragon_king").get<std::string>();
    m.phase.n_outlier_hubs = jp.at("n_outlier_hubs").get<int>();
    return m;
}

} // namespace

json series_to_json(const ScanSeries& series) {
    json records = json::array();
    for (const auto& rec : series.records) {
        json r{{"index", rec.index},
               {"window_start", rec.window_start},
               {"window_end", rec.window_end},
               {"n_survivors", rec.n_survivors},
               {"skipped", rec.skipped}};
        if (rec.skipped)
            r["skip_reason"] = rec.skip_reason;
        else
            r["metrics"] = metrics_to_json(*rec.metrics);
        records.push_back(std::move(r));
    }
    return {{"config", config_to_json(series.config)},
            {"records", std::move(records)}};
}

ScanSeries series_from_json(const json& j) {
    ScanSeries series;
    series.config = config_from_json(j.at("config"));
    for (const auto& r : j.at("records")) {
        WindowRecord rec;
        rec.index = r.at("index").get<size_t>();
        rec.window_start = r.at("window_start").get<std::string>();
        rec.window_end = r.at("window_end").get<std::string>();
        rec.n_survivors = r.at("n_survivors").get<int>();
        rec.skipped = r.at("skipped").get<bool>();
        if (rec.skipped)
            rec.skip_reason = r.at("skip_reason").get<std::string>();
        else
            rec.metrics = metrics_from_json(r.at("metrics"), rec.window_start,
                                            rec.window_end);
        series.records.push_back(std::move(rec));
    }
    return series;
}

json phases_to_json(const ScanSeries& series) {
    std::vector<PhaseKind> labels;
    std::vector<const WindowRecord*> live;
    for (const auto& rec : series.records) {
        if (rec.skipped) continue;
        labels.push_back(rec.metrics->phase.kind);
        live.push_back(&rec);
    }
    auto smoothed = smooth_labels(labels, series.config.thresholds.w_smooth);

    json rows = json::array();
    for (size_t i = 0; i < live.size(); ++i) {
        const WindowMetrics& m = *live[i]->metrics;
        json r{{"index", live[i]->index},
               {"window_start", live[i]->window_start},
               {"window_end", live[i]->window_end},
               {"phase", to_string(m.phase.kind)},
               {"smoothed", to_string(smoothed[i])},
               {"n_outlier_hubs", m.phase.n_outlier_hubs}};
        r["dragon_king"] = m.phase.dragon_king ? json(*m.phase.dragon_king) : json();
        rows.push_back(std::move(r));
    }

    json events = json::array();
    for (const auto& e : series_transitions(series))
        events.push_back({{"index", e.index},
                          {"window_start", e.window_start},
                          {"from", to_string(e.from)},
                          {"to", to_string(e.to)}});

    return {{"w_smooth", series.config.thresholds.w_smooth},
            {"labels", std::move(rows)},
            {"events", std::move(events)}};
}

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open input file: " + path);
    uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        auto got = static_cast<size_t>(f.gcount());
        for (size_t i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

} // namespace mstphase
