#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mstphase/common.hpp"
#include "mstphase/panel.hpp"
#include "mstphase/scan.hpp"
#include "mstphase/series_io.hpp"
#include "mstphase/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mstphase;

namespace {

std::string fmt4(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4f", x);
    return b;
}

std::string hex64(uint64_t h) {
    char b[24];
    std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(h));
    return b;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DataError("cannot write " + p.string());
    f << content;
    if (!f) throw DataError("write failed: " + p.string());
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open input file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return j;
}

struct Manifest {
    json j;

    Manifest(const std::string& cmd, const std::vector<std::string>& argv) {
        j["tool"] = {{"name", "mstphase"}, {"version", version()}};
        j["command"] = cmd;
        std::string line;
        for (const auto& a : argv) {
            if (!line.empty()) line += ' ';
            line += a;
        }
        j["command_line"] = line;
        j["argv"] = argv;
        j["inputs"] = json::array();
        j["outputs"] = json::array();
    }

    void add_input(const std::string& path) {
        j["inputs"].push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64_file(path))}});
    }
    void add_output(const std::string& name) { j["outputs"].push_back(name); }
    void write(const fs::path& dir) {
        write_file(dir / "manifest.json", j.dump(2) + "\n");
    }
};

void add_threshold_flags(CLI::App* cmd, Thresholds& th) {
    cmd->add_option("--r-gap", th.r_gap, "degree-gap ratio for the dragon-king test");
    cmd->add_option("--p-tail", th.p_tail, "expected-count ceiling at the max degree");
    cmd->add_option("--z-hub", th.z_hub, "outlier-hub standardized threshold");
    cmd->add_option("--h-min", th.h_min, "outlier hubs needed for the decorated label");
    cmd->add_option("--rel-err-max", th.rel_err_max, "stderr/gamma gate for a usable fit");
    cmd->add_option("--w-smooth", th.w_smooth, "label smoothing window (odd)");
}

void add_window_flags(CLI::App* cmd, ScanConfig& cfg) {
    cmd->add_option("--gap-limit", cfg.gap_limit, "longest tolerated missing run");
    cmd->add_flag("--detrend,!--no-detrend", cfg.detrend,
                  "remove the cross-sectional mean return per day");
    cmd->add_option("--static-center", cfg.static_center,
                    "fixed central ticker for the static occupation layer");
    cmd->add_option("--exclude", cfg.exclude, "tickers to drop before analysis")
        ->delimiter(',');
    cmd->add_option("--fit-lo", cfg.fit_lo, "lower degree of the fit range");
    cmd->add_option("--fit-hi", cfg.fit_hi, "upper degree of the fit range");
    cmd->add_option("--coincidence-tol", cfg.coincidence_tol,
                    "static/dynamic occupation-layer agreement tolerance");
}

std::string tree_edge_csv(const Tree& t) {
    std::ostringstream s;
    write_edge_list(t, s);
    return s.str();
}

std::string tree_graphml(const Tree& t) {
    std::ostringstream s;
    write_graphml(t, s);
    return s.str();
}

void cmd_scan(const std::vector<std::string>& argv, const std::string& input,
              const std::string& out_dir, const ScanConfig& cfg, bool dump_trees) {
    fs::create_directories(out_dir);
    auto panel = load_price_panel_file(input);
    ScanConfig run_cfg = cfg;
    run_cfg.keep_trees = dump_trees;
    auto series = run_scan(panel, run_cfg);
    json sj = series_to_json(series);

    Manifest man("scan", argv);
    man.add_input(input);
    man.j["config"] = sj["config"];
    man.j["config"]["threads"] = cfg.threads;

    std::ostringstream csv;
    write_series_csv(series, csv);
    write_file(fs::path(out_dir) / "series.csv", csv.str());
    man.add_output("series.csv");
    write_file(fs::path(out_dir) / "series.json", sj.dump(2) + "\n");
    man.add_output("series.json");

    if (dump_trees) {
        fs::create_directories(fs::path(out_dir) / "trees");
        for (size_t i = 0; i < series.records.size(); ++i) {
            if (!series.trees[i]) continue;
            char base[64];
            std::snprintf(base, sizeof base, "trees/w%04zu_%s", i,
                          series.records[i].window_start.c_str());
            write_file(fs::path(out_dir) / (std::string(base) + ".edges.csv"),
                       tree_edge_csv(*series.trees[i]));
            man.add_output(std::string(base) + ".edges.csv");
            write_file(fs::path(out_dir) / (std::string(base) + ".graphml"),
                       tree_graphml(*series.trees[i]));
            man.add_output(std::string(base) + ".graphml");
        }
    }
    man.write(out_dir);
}

void cmd_tree(const std::vector<std::string>& argv, const std::string& input,
              const std::string& out_dir, const ScanConfig& cfg,
              const std::string& start_arg) {
    fs::create_directories(out_dir);
    auto panel = load_price_panel_file(input);

    size_t start;
    bool numeric = !start_arg.empty() &&
                   start_arg.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
        start = std::stoul(start_arg);
    } else {
        auto it = std::find(panel.dates.begin(), panel.dates.end(), start_arg);
        if (it == panel.dates.end())
            throw DataError("date not in panel: " + start_arg);
        start = static_cast<size_t>(it - panel.dates.begin());
    }

    auto analysis = analyze_window(panel, cfg, 0, start);
    if (analysis.record.skipped)
        throw DataError("window starting " + analysis.record.window_start + ": " +
                        analysis.record.skip_reason);

    Manifest man("tree", argv);
    man.add_input(input);
    man.j["config"] = {{"window_length", cfg.window_length},
                       {"start", analysis.record.window_start},
                       {"gap_limit", cfg.gap_limit},
                       {"detrend", cfg.detrend},
                       {"exclude", cfg.exclude},
                       {"fit_range", {cfg.fit_lo, cfg.fit_hi}}};

    write_file(fs::path(out_dir) / "tree.edges.csv", tree_edge_csv(*analysis.tree));
    man.add_output("tree.edges.csv");
    write_file(fs::path(out_dir) / "tree.graphml", tree_graphml(*analysis.tree));
    man.add_output("tree.graphml");

    json m{{"window_start", analysis.record.window_start},
           {"window_end", analysis.record.window_end},
           {"n_survivors", analysis.record.n_survivors},
           {"metrics", metrics_to_json(*analysis.record.metrics)}};
    write_file(fs::path(out_dir) / "metrics.json", m.dump(2) + "\n");
    man.add_output("metrics.json");
    man.write(out_dir);
}

std::string transitions_text(const ScanSeries& series) {
    auto events = series_transitions(series);
    std::ostringstream out;
    if (events.empty()) {
        out << "no transitions\n";
        return out.str();
    }
    out << "transitions: " << events.size() << "\n";
    for (const auto& e : events)
        out << "  " << e.window_start << "  " << to_string(e.from) << " -> "
            << to_string(e.to) << "\n";
    return out.str();
}

void cmd_classify(const std::vector<std::string>& argv, const std::string& series_path,
                  const std::string& out_dir, const Thresholds& th,
                  const std::vector<std::string>& overridden) {
    fs::create_directories(out_dir);
    auto series = series_from_json(load_json(series_path));

    Thresholds eff = series.config.thresholds;
    for (const auto& name : overridden) {
        if (name == "--r-gap") eff.r_gap = th.r_gap;
        else if (name == "--p-tail") eff.p_tail = th.p_tail;
        else if (name == "--z-hub") eff.z_hub = th.z_hub;
        else if (name == "--h-min") eff.h_min = th.h_min;
        else if (name == "--rel-err-max") eff.rel_err_max = th.rel_err_max;
        else if (name == "--w-smooth") eff.w_smooth = th.w_smooth;
    }
    series.config.thresholds = eff;
    for (auto& rec : series.records)
        if (!rec.skipped) rec.metrics->phase = classify(*rec.metrics, eff);

    Manifest man("classify", argv);
    man.add_input(series_path);
    man.j["config"] = {{"thresholds",
                        {{"r_gap", eff.r_gap},
                         {"p_tail", eff.p_tail},
                         {"z_hub", eff.z_hub},
                         {"rel_err_max", eff.rel_err_max},
                         {"h_min", eff.h_min},
                         {"w_smooth", eff.w_smooth}}}};

    write_file(fs::path(out_dir) / "phases.json", phases_to_json(series).dump(2) + "\n");
    man.add_output("phases.json");
    write_file(fs::path(out_dir) / "transitions.txt", transitions_text(series));
    man.add_output("transitions.txt");
    man.write(out_dir);
}

std::string make_report(const ScanSeries& series, const json& phases) {
    const json& labels = phases.at("labels");
    const json& events = phases.at("events");

    std::ostringstream out;
    size_t analyzed = labels.size();
    size_t skipped = series.records.size() - analyzed;
    out << "MST phase scan report\n";
    out << "=====================\n";
    out << "windows: " << analyzed << " analyzed, " << skipped << " skipped\n";
    out << "window length: " << series.config.window_length << " days, step "
        << series.config.step << ", w_smooth " << phases.at("w_smooth").get<int>()
        << "\n\n";

    struct Episode {
        std::string kind;
        size_t first, last; // row indices into labels
    };
    std::vector<Episode> episodes;
    for (size_t i = 0; i < labels.size(); ++i) {
        std::string kind = labels[i].at("smoothed").get<std::string>();
        if (episodes.empty() || episodes.back().kind != kind)
            episodes.push_back({kind, i, i});
        else
            episodes.back().last = i;
    }
    auto row_start = [&](size_t i) {
        return labels[i].at("window_start").get<std::string>();
    };
    auto row_end = [&](size_t i) {
        return labels[i].at("window_end").get<std::string>();
    };

    out << "phase episodes (smoothed)\n";
    for (const auto& ep : episodes)
        out << "  " << row_start(ep.first) << " .. " << row_end(ep.last) << "  "
            << ep.kind << "  [" << (ep.last - ep.first + 1) << " windows]\n";
    out << "\n";

    if (events.empty()) {
        out << "no transitions\n\n";
    } else {
        out << "transitions: " << events.size() << "\n";
        for (const auto& e : events)
            out << "  " << e.at("window_start").get<std::string>() << "  "
                << e.at("from").get<std::string>() << " -> "
                << e.at("to").get<std::string>() << "\n";
        out << "\n";
    }

    size_t n_dk = 0;
    std::ostringstream dk_lines;
    for (const auto& ep : episodes) {
        if (ep.kind != "Superstar") continue;
        ++n_dk;
        std::map<std::string, int> tickers;
        for (size_t i = ep.first; i <= ep.last; ++i)
            if (!labels[i].at("dragon_king").is_null())
                ++tickers[labels[i].at("dragon_king").get<std::string>()];
        std::string who = "unknown";
        int best = 0;
        for (const auto& [t, c] : tickers)
            if (c > best) {
                who = t;
                best = c;
            }
        dk_lines << "  " << row_start(ep.first) << " .. " << row_end(ep.last) << "  "
                 << who << "\n";
    }
    out << "dragon-king episodes: " << n_dk << "\n" << dk_lines.str() << "\n";

    out << "absolute minima\n";
    auto minimum_line = [&](const std::string& metric) {
        size_t idx = absolute_minimum(series, metric);
        const WindowMetrics& m = *series.records[idx].metrics;
        double v = 0;
        if (metric == "mol_dynamic") v = m.mol_dynamic;
        else if (metric == "mol_static") v = *m.mol_static;
        else if (metric == "s_deg") v = m.s_deg;
        else if (metric == "s_eff") v = m.s_eff;
        else v = m.mean_tree_length;
        char name[24];
        std::snprintf(name, sizeof name, "%-17s", metric.c_str());
        out << "  " << name << fmt4(v) << "  " << m.window_start << " .. "
            << m.window_end << "\n";
    };
    minimum_line("mol_dynamic");
    if (series.config.static_center) minimum_line("mol_static");
    minimum_line("s_deg");
    minimum_line("s_eff");
    minimum_line("mean_tree_length");
    out << "\n";

    out << "fitted exponent per regime\n";
    for (const auto& ep : episodes) {
        double g = 0, se = 0;
        int n = 0;
        for (size_t i = ep.first; i <= ep.last; ++i) {
            size_t idx = labels[i].at("index").get<size_t>();
            const auto& fit = series.records[idx].metrics->fit;
            if (!fit) continue;
            g += fit->gamma;
            se += fit->std_error;
            ++n;
        }
        char name[24];
        std::snprintf(name, sizeof name, "%-20s", ep.kind.c_str());
        out << "  " << name << row_start(ep.first) << " .. " << row_end(ep.last);
        if (n > 0)
            out << "  gamma " << fmt4(g / n) << " +/- " << fmt4(se / n) << "\n";
        else
            out << "  no fit\n";
    }
    return out.str();
}

void cmd_report(const std::vector<std::string>& argv, const std::string& series_path,
                const std::string& phases_path, const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto series = series_from_json(load_json(series_path));
    auto phases = load_json(phases_path);

    Manifest man("report", argv);
    man.add_input(series_path);
    man.add_input(phases_path);
    write_file(fs::path(out_dir) / "report.txt", make_report(series, phases));
    man.add_output("report.txt");
    man.write(out_dir);
}

std::string panel_csv(const PricePanel& p) {
    std::ostringstream out;
    out << "date,ticker,close\n";
    for (size_t d = 0; d < p.n_days(); ++d)
        for (size_t t = 0; t < p.n_tickers(); ++t)
            if (!p.missing(d, t))
                out << p.dates[d] << ',' << p.tickers[t] << ',' << fmt17(p.at(d, t))
                    << '\n';
    return out.str();
}

SuperhubInjection parse_injection(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5)
        throw DataError("--inject expects target,start,end,rho,breadth: " + s);
    SuperhubInjection inj;
    try {
        inj.target = std::stoul(parts[0]);
        inj.start_day = std::stoul(parts[1]);
        inj.end_day = std::stoul(parts[2]);
        inj.rho = std::stod(parts[3]);
        inj.breadth = std::stoul(parts[4]);
    } catch (const std::exception&) {
        throw DataError("--inject expects target,start,end,rho,breadth: " + s);
    }
    return inj;
}

SuperhubInjection injection_from_json(const json& j) {
    SuperhubInjection inj;
    inj.target = j.at("target").get<size_t>();
    inj.start_day = j.at("start_day").get<size_t>();
    inj.end_day = j.at("end_day").get<size_t>();
    inj.rho = j.at("rho").get<double>();
    inj.breadth = j.at("breadth").get<size_t>();
    return inj;
}

void cmd_synth(const std::vector<std::string>& argv, const std::string& out_dir,
               const std::string& scenario_path, FactorMarketSpec spec, double beta,
               const std::vector<std::string>& inject_args) {
    fs::create_directories(out_dir);
    std::vector<SuperhubInjection> injections;
    if (!scenario_path.empty()) {
        json sc = load_json(scenario_path);
        spec.n_assets = sc.at("n_assets").get<size_t>();
        spec.n_days = sc.at("n_days").get<size_t>();
        spec.seed = sc.at("seed").get<uint64_t>();
        spec.sigma_market = sc.value("sigma_market", spec.sigma_market);
        spec.sigma_idio = sc.value("sigma_idio", spec.sigma_idio);
        if (sc.contains("betas"))
            spec.betas = sc.at("betas").get<std::vector<double>>();
        else
            spec.betas.assign(spec.n_assets, sc.value("beta", beta));
        for (const auto& ij : sc.value("injections", json::array()))
            injections.push_back(injection_from_json(ij));
    } else {
        spec.betas.assign(spec.n_assets, beta);
        for (const auto& s : inject_args) injections.push_back(parse_injection(s));
    }

    auto panel = gen_factor_market(spec);
    for (const auto& inj : injections) panel = inject_superhub(panel, inj);

    Manifest man("synth", argv);
    if (!scenario_path.empty()) man.add_input(scenario_path);
    json cfg{{"n_assets", spec.n_assets},
             {"n_days", spec.n_days},
             {"seed", spec.seed},
             {"sigma_market", spec.sigma_market},
             {"sigma_idio", spec.sigma_idio},
             {"betas", spec.betas}};
    json inj_list = json::array();
    for (const auto& inj : injections)
        inj_list.push_back({{"target", inj.target},
                            {"start_day", inj.start_day},
                            {"end_day", inj.end_day},
                            {"rho", inj.rho},
                            {"breadth", inj.breadth}});
    cfg["injections"] = std::move(inj_list);
    man.j["config"] = std::move(cfg);

    write_file(fs::path(out_dir) / "panel.csv", panel_csv(panel));
    man.add_output("panel.csv");
    man.write(out_dir);
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);

    CLI::App app{"Correlation-MST phase analysis of asset price panels"};
    app.set_version_flag("--version", version());
    app.set_config("--config");
    app.require_subcommand(1);

    // scan
    auto* scan = app.add_subcommand("scan", "rolling-window scan of a price panel");
    std::string scan_input, scan_out;
    ScanConfig scan_cfg;
    bool dump_trees = false;
    scan->add_option("--input", scan_input, "price panel CSV")->required();
    scan->add_option("--out", scan_out, "output directory")->required();
    scan->add_option("--window", scan_cfg.window_length, "window length in trading days")
        ->required();
    scan->add_option("--step", scan_cfg.step, "spacing between window starts")->required();
    add_window_flags(scan, scan_cfg);
    add_threshold_flags(scan, scan_cfg.thresholds);
    scan->add_option("--threads", scan_cfg.threads, "worker threads");
    scan->add_flag("--dump-trees", dump_trees, "export each window's tree");
    scan->callback([&] { cmd_scan(args, scan_input, scan_out, scan_cfg, dump_trees); });

    // tree
    auto* tree = app.add_subcommand("tree", "single-window tree export");
    std::string tree_input, tree_out, tree_start;
    ScanConfig tree_cfg;
    tree->add_option("--input", tree_input, "price panel CSV")->required();
    tree->add_option("--out", tree_out, "output directory")->required();
    tree->add_option("--start", tree_start, "window start date (ISO) or day index")
        ->required();
    tree->add_option("--window", tree_cfg.window_length, "window length in trading days")
        ->required();
    add_window_flags(tree, tree_cfg);
    add_threshold_flags(tree, tree_cfg.thresholds);
    tree->callback([&] {
        if (tree_cfg.window_length < 30)
            throw DataError("window length must be at least 30");
        cmd_tree(args, tree_input, tree_out, tree_cfg, tree_start);
    });

    // classify
    auto* classify = app.add_subcommand("classify", "relabel a scan series");
    std::string cls_series, cls_out;
    Thresholds cls_th;
    classify->add_option("--series", cls_series, "series.json from a scan")->required();
    classify->add_option("--out", cls_out, "output directory")->required();
    add_threshold_flags(classify, cls_th);
    classify->callback([&] {
        std::vector<std::string> overridden;
        for (const char* name : {"--r-gap", "--p-tail", "--z-hub", "--h-min",
                                 "--rel-err-max", "--w-smooth"})
            if (classify->count(name) > 0) overridden.push_back(name);
        cmd_classify(args, cls_series, cls_out, cls_th, overridden);
    });

    // report
    auto* report = app.add_subcommand("report", "human-readable run summary");
    std::string rep_series, rep_phases, rep_out;
    report->add_option("--series", rep_series, "series.json from a scan")->required();
    report->add_option("--phases", rep_phases, "phases.json from classify")->required();
    report->add_option("--out", rep_out, "output directory")->required();
    report->callback([&] { cmd_report(args, rep_series, rep_phases, rep_out); });

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic price panel");
    std::string syn_out, syn_scenario;
    FactorMarketSpec spec;
    spec.sigma_market = 0.01;
    spec.sigma_idio = 0.02;
    double syn_beta = 1.0;
    std::vector<std::string> syn_inject;
    synth->add_option("--out", syn_out, "output directory")->required();
    auto* o_scenario =
        synth->add_option("--scenario", syn_scenario, "scenario JSON file");
    auto* o_assets = synth->add_option("--assets", spec.n_assets, "asset count");
    auto* o_days = synth->add_option("--days", spec.n_days, "price days");
    auto* o_seed = synth->add_option("--seed", spec.seed, "generator seed");
    synth->add_option("--beta", syn_beta, "uniform market loading");
    synth->add_option("--sigma-market", spec.sigma_market, "market volatility");
    synth->add_option("--sigma-idio", spec.sigma_idio, "idiosyncratic volatility");
    synth->add_option("--inject", syn_inject,
                      "superhub injection target,start,end,rho,breadth")
        ->expected(1)
        ->allow_extra_args(false);
    o_scenario->excludes(o_assets)->excludes(o_days)->excludes(o_seed);
    synth->callback([&] {
        if (syn_scenario.empty() &&
            (o_assets->count() == 0 || o_days->count() == 0 || o_seed->count() == 0))
            throw CLI::ValidationError(
                "--assets, --days, --seed are required without --scenario");
        cmd_synth(args, syn_out, syn_scenario, spec, syn_beta, syn_inject);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
