#include "mstphase/panel.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

namespace mstphase {

namespace {

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

bool looks_like_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

PricePanel load_price_panel(std::istream& in) {
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw DataError("no records");
    ++lineno;
    if (strip_cr(line) != "date,ticker,close")
        throw DataError("line 1: expected header 'date,ticker,close'");

    struct Row {
        std::string date, ticker;
        double close;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw DataError("line " + std::to_string(lineno) + ": expected 3 fields");
        Row r;
        r.date = line.substr(0, c1);
        r.ticker = line.substr(c1 + 1, c2 - c1 - 1);
        std::string close = line.substr(c2 + 1);
        if (!looks_like_iso_date(r.date))
            throw DataError("line " + std::to_string(lineno) + ": bad date '" + r.date + "'");
        if (r.ticker.empty())
            throw DataError("line " + std::to_string(lineno) + ": empty ticker");
        char* end = nullptr;
        r.close = std::strtod(close.c_str(), &end);
        if (close.empty() || end != close.c_str() + close.size() || !std::isfinite(r.close) ||
            r.close <= 0)
            throw DataError("line " + std::to_string(lineno) + ": bad close '" + close + "'");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw DataError("no records");

    PricePanel p;
    for (const auto& r : rows) {
        p.dates.push_back(r.date);
        p.tickers.push_back(r.ticker);
    }
    std::sort(p.dates.begin(), p.dates.end());
    p.dates.erase(std::unique(p.dates.begin(), p.dates.end()), p.dates.end());
    std::sort(p.tickers.begin(), p.tickers.end());
    p.tickers.erase(std::unique(p.tickers.begin(), p.tickers.end()), p.tickers.end());

    std::map<std::string, size_t> dix, tix;
    for (size_t i = 0; i < p.dates.size(); ++i) dix[p.dates[i]] = i;
    for (size_t i = 0; i < p.tickers.size(); ++i) tix[p.tickers[i]] = i;

    p.prices.assign(p.dates.size() * p.tickers.size(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& r : rows) {
        double& cell = p.at(dix[r.date], tix[r.ticker]);
        if (!std::isnan(cell))
            throw DataError("duplicate (date,ticker) pair: " + r.date + "," + r.ticker);
        cell = r.close;
    }
    return p;
}

PricePanel load_price_panel_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open input file: " + path);
    return load_price_panel(f);
}

std::vector<size_t> window_survivors(const PricePanel& panel, size_t start, size_t length,
                                     size_t gap_limit) {
    if (length < 1 || start + length > panel.n_days())
        throw DataError("window outside panel date range");
    std::vector<size_t> out;
    for (size_t t = 0; t < panel.n_tickers(); ++t) {
        if (panel.missing(start, t) || panel.missing(start + length - 1, t)) continue;
        size_t run = 0, longest = 0;
        for (size_t d = start; d < start + length; ++d) {
            if (panel.missing(d, t))
                longest = std::max(longest, ++run);
            else
                run = 0;
        }
        if (longest <= gap_limit) out.push_back(t);
    }
    return out;
}

ReturnPanel log_returns(const PricePanel& panel, const std::vector<size_t>& ticker_idx,
                        size_t start, size_t length, bool detrend) {
    if (length < 2) throw DataError("window has fewer than 2 days");
    if (start + length > panel.n_days()) throw DataError("window outside panel date range");

    size_t nr = length - 1, nc = ticker_idx.size();
    ReturnPanel rp;
    rp.dates.assign(panel.dates.begin() + static_cast<long>(start) + 1,
                    panel.dates.begin() + static_cast<long>(start + length));
    for (size_t t : ticker_idx) rp.tickers.push_back(panel.tickers[t]);
    rp.returns.assign(nr * nc, 0.0);

    std::vector<double> filled(length);
    for (size_t c = 0; c < nc; ++c) {
        size_t t = ticker_idx[c];
        if (panel.missing(start, t))
            throw DataError("ticker " + panel.tickers[t] + " missing at window start");
        for (size_t d = 0; d < length; ++d) {
            double v = panel.at(start + d, t);
            filled[d] = std::isnan(v) ? filled[d - 1] : v;
        }
        for (size_t r = 0; r < nr; ++r)
            rp.at(r, c) = std::log(filled[r + 1]) - std::log(filled[r]);
    }

    if (detrend) {
        for (size_t r = 0; r < nr; ++r) {
            double m = 0;
            for (size_t c = 0; c < nc; ++c) m += rp.at(r, c);
            m /= static_cast<double>(nc);
            for (size_t c = 0; c < nc; ++c) rp.at(r, c) -= m;
        }
    }
    return rp;
}

}  // namespace mstphase
