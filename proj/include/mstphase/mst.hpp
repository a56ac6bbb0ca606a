#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mstphase/correlation.hpp"

namespace mstphase {

struct Edge {
    size_t i, j;  // i < j
    double w;
};

// A spanning tree: N vertex labels, N-1 weighted edges.
struct Tree {
    std::vector<std::string> tickers;
    std::vector<Edge> edges;

    size_t n() const { return tickers.size(); }
    double total_weight() const {
        double s = 0;
        for (const auto& e : edges) s += e.w;
        return s;
    }
};

// Dense Prim, O(N^2). Equal-weight ties prefer the edge whose endpoint pair is
// lexicographically smallest by (min ticker, max ticker), so results are
// deterministic; with all distances equal this yields the star rooted at the
// lexicographically first ticker.
Tree prim_mst(const DistanceMatrix& D);

// Kruskal with the same tie rule; kept as a permanent cross-check oracle.
Tree kruskal_mst(const DistanceMatrix& D);

std::vector<int> degrees(const Tree& t);

// adjacency[v] = list of (neighbor, edge weight)
std::vector<std::vector<std::pair<size_t, double>>> adjacency(const Tree& t);

// Hop counts from root along tree edges.
std::vector<int> levels(const Tree& t, size_t root);

// `ticker_i,ticker_j,weight` rows sorted by pair, weights at 17 significant digits.
void write_edge_list(const Tree& t, std::ostream& out);

// GraphML with node labels and edge weight attributes.
void write_graphml(const Tree& t, std::ostream& out);

}  // namespace mstphase
