#pragma once

#include <string>
#include <vector>

#include "mstphase/panel.hpp"

namespace mstphase {

// Pearson correlations, entries clamped to [-1,1], unit diagonal.
struct CorrelationMatrix {
    std::vector<std::string> tickers;
    std::vector<double> c;  // N x N row-major

    size_t n() const { return tickers.size(); }
    double at(size_t i, size_t j) const { return c[i * tickers.size() + j]; }
    double& at(size_t i, size_t j) { return c[i * tickers.size() + j]; }
};

// Metric distances d = sqrt(2(1-C)) in [0,2], zero diagonal.
struct DistanceMatrix {
    std::vector<std::string> tickers;
    std::vector<double> d;  // N x N row-major

    size_t n() const { return tickers.size(); }
    double at(size_t i, size_t j) const { return d[i * tickers.size() + j]; }
    double& at(size_t i, size_t j) { return d[i * tickers.size() + j]; }
};

// Sample Pearson coefficient per pair (n-1 normalization; the choice cancels in the
// ratio). Throws ZeroVarianceError listing all constant columns; the caller may drop
// them and retry.
CorrelationMatrix pearson_matrix(const ReturnPanel& returns);

DistanceMatrix to_distance(const CorrelationMatrix& C);

}  // namespace mstphase
