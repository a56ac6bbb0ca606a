#include "mstphase/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace mstphase {

CorrelationMatrix pearson_matrix(const ReturnPanel& returns) {
    size_t nr = returns.n_rows(), nc = returns.n_cols();
    if (nr < 2) throw DataError("pearson_matrix needs at least 2 rows");

    // standardize columns, then correlations are plain dot products / (nr-1)
    std::vector<double> z(nr * nc);
    std::vector<std::string> constant;
    for (size_t c = 0; c < nc; ++c) {
        double mean = 0;
        for (size_t r = 0; r < nr; ++r) mean += returns.at(r, c);
        mean /= static_cast<double>(nr);
        double ss = 0;
        for (size_t r = 0; r < nr; ++r) {
            double d = returns.at(r, c) - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / static_cast<double>(nr - 1));
        if (sd <= 0.0) {
            constant.push_back(returns.tickers[c]);
            continue;
        }
        for (size_t r = 0; r < nr; ++r) z[r * nc + c] = (returns.at(r, c) - mean) / sd;
    }
    if (!constant.empty()) throw ZeroVarianceError(std::move(constant));

    CorrelationMatrix C;
    C.tickers = returns.tickers;
    C.c.assign(nc * nc, 0.0);
    for (size_t i = 0; i < nc; ++i) {
        C.at(i, i) = 1.0;
        for (size_t j = i + 1; j < nc; ++j) {
            double s = 0;
            for (size_t r = 0; r < nr; ++r) s += z[r * nc + i] * z[r * nc + j];
            double v = s / static_cast<double>(nr - 1);
            v = std::clamp(v, -1.0, 1.0);
            C.at(i, j) = v;
            C.at(j, i) = v;
        }
    }
    return C;
}

DistanceMatrix to_distance(const CorrelationMatrix& C) {
    DistanceMatrix D;
    D.tickers = C.tickers;
    size_t n = C.n();
    D.d.assign(n * n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            D.at(i, j) = i == j ? 0.0 : std::sqrt(std::max(0.0, 2.0 * (1.0 - C.at(i, j))));
    return D;
}

}  // namespace mstphase
