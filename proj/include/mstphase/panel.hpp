#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "mstphase/common.hpp"

namespace mstphase {

// Date-indexed close-price matrix. NaN marks a missing (date,ticker) pair.
// Dates strictly increasing; tickers sorted so lexicographic order equals index order.
struct PricePanel {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    std::vector<double> prices;  // dates.size() x tickers.size(), row-major

    size_t n_days() const { return dates.size(); }
    size_t n_tickers() const { return tickers.size(); }
    double at(size_t d, size_t t) const { return prices[d * tickers.size() + t]; }
    double& at(size_t d, size_t t) { return prices[d * tickers.size() + t]; }
    bool missing(size_t d, size_t t) const { return std::isnan(at(d, t)); }
};

// Complete (no missing entries) log-return matrix for one window's survivors.
struct ReturnPanel {
    std::vector<std::string> dates;  // one fewer than the window's price days
    std::vector<std::string> tickers;
    std::vector<double> returns;  // dates.size() x tickers.size(), row-major

    size_t n_rows() const { return dates.size(); }
    size_t n_cols() const { return tickers.size(); }
    double at(size_t r, size_t c) const { return returns[r * tickers.size() + c]; }
    double& at(size_t r, size_t c) { return returns[r * tickers.size() + c]; }
};

// Parses `date,ticker,close` records. Throws DataError with the line number on a
// malformed row, on a duplicate (date,ticker) pair, and on empty input.
PricePanel load_price_panel(std::istream& in);
PricePanel load_price_panel_file(const std::string& path);

// Ticker indices (panel order) whose series inside [start, start+length) has
// non-missing first and last values and no missing run longer than gap_limit.
std::vector<size_t> window_survivors(const PricePanel& panel, size_t start, size_t length,
                                     size_t gap_limit);

// Log-returns over [start, start+length) for the given tickers; internal gaps are
// filled by carrying the last observed price forward. With detrend, the per-day
// cross-sectional mean return is subtracted from every asset (market mode removal).
ReturnPanel log_returns(const PricePanel& panel, const std::vector<size_t>& ticker_idx,
                        size_t start, size_t length, bool detrend);

}  // namespace mstphase
