#include "mstphase/mst.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "mstphase/common.hpp"

namespace mstphase {

namespace {

// lexicographic (min ticker, max ticker) comparison of two edges
bool pair_less(const std::vector<std::string>& t, size_t a1, size_t a2, size_t b1, size_t b2) {
    const std::string *alo = &t[a1], *ahi = &t[a2];
    if (*ahi < *alo) std::swap(alo, ahi);
    const std::string *blo = &t[b1], *bhi = &t[b2];
    if (*bhi < *blo) std::swap(blo, bhi);
    if (*alo != *blo) return *alo < *blo;
    return *ahi < *bhi;
}

Edge make_edge(const std::vector<std::string>& t, size_t a, size_t b, double w) {
    if (t[b] < t[a]) std::swap(a, b);
    return Edge{std::min(a, b), std::max(a, b), w};
}

struct Dsu {
    std::vector<size_t> parent, rank_;
    explicit Dsu(size_t n) : parent(n), rank_(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Tree prim_mst(const DistanceMatrix& D) {
    size_t n = D.n();
    Tree t;
    t.tickers = D.tickers;
    if (n <= 1) return t;

    // start from the lexicographically smallest ticker so ties are input-order free
    size_t start = 0;
    for (size_t v = 1; v < n; ++v)
        if (D.tickers[v] < D.tickers[start]) start = v;

    std::vector<char> used(n, 0);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<size_t> from(n, start);
    used[start] = 1;
    for (size_t v = 0; v < n; ++v)
        if (v != start) best[v] = D.at(start, v);

    for (size_t round = 1; round < n; ++round) {
        size_t pick = n;
        for (size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            if (pick == n || best[v] < best[pick] ||
                (best[v] == best[pick] && pair_less(D.tickers, from[v], v, from[pick], pick)))
                pick = v;
        }
        used[pick] = 1;
        t.edges.push_back(make_edge(D.tickers, from[pick], pick, best[pick]));
        for (size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            double w = D.at(pick, v);
            if (w < best[v] || (w == best[v] && pair_less(D.tickers, pick, v, from[v], v))) {
                best[v] = w;
                from[v] = pick;
            }
        }
    }
    return t;
}

Tree kruskal_mst(const DistanceMatrix& D) {
    size_t n = D.n();
    Tree t;
    t.tickers = D.tickers;
    if (n <= 1) return t;

    std::vector<Edge> all;
    all.reserve(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) all.push_back(Edge{i, j, D.at(i, j)});
    std::sort(all.begin(), all.end(), [&](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w < b.w;
        return pair_less(D.tickers, a.i, a.j, b.i, b.j);
    });

    Dsu dsu(n);
    for (const auto& e : all) {
        if (dsu.unite(e.i, e.j)) {
            t.edges.push_back(make_edge(D.tickers, e.i, e.j, e.w));
            if (t.edges.size() == n - 1) break;
        }
    }
    return t;
}

std::vector<int> degrees(const Tree& t) {
    std::vector<int> deg(t.n(), 0);
    for (const auto& e : t.edges) {
        ++deg[e.i];
        ++deg[e.j];
    }
    return deg;
}

std::vector<std::vector<std::pair<size_t, double>>> adjacency(const Tree& t) {
    std::vector<std::vector<std::pair<size_t, double>>> adj(t.n());
    for (const auto& e : t.edges) {
        adj[e.i].emplace_back(e.j, e.w);
        adj[e.j].emplace_back(e.i, e.w);
    }
    return adj;
}

std::vector<int> levels(const Tree& t, size_t root) {
    if (root >= t.n()) throw DataError("levels: root not in tree");
    auto adj = adjacency(t);
    std::vector<int> lev(t.n(), -1);
    std::vector<size_t> queue{root};
    lev[root] = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
        size_t v = queue[h];
        for (auto [u, w] : adj[v]) {
            if (lev[u] < 0) {
                lev[u] = lev[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return lev;
}

void write_edge_list(const Tree& t, std::ostream& out) {
    std::vector<Edge> es = t.edges;
    std::sort(es.begin(), es.end(), [&](const Edge& a, const Edge& b) {
        return pair_less(t.tickers, a.i, a.j, b.i, b.j);
    });
    out << "ticker_i,ticker_j,weight\n";
    for (const auto& e : es) {
        const std::string &a = t.tickers[e.i], &b = t.tickers[e.j];
        if (a <= b)
            out << a << "," << b;
        else
            out << b << "," << a;
        out << "," << fmt17(e.w) << "\n";
    }
}

void write_graphml(const Tree& t, std::ostream& out) {
    std::vector<size_t> order(t.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return t.tickers[a] < t.tickers[b]; });
    std::vector<size_t> node_id(t.n());
    for (size_t k = 0; k < order.size(); ++k) node_id[order[k]] = k;

    std::vector<Edge> es = t.edges;
    std::sort(es.begin(), es.end(), [&](const Edge& a, const Edge& b) {
        return pair_less(t.tickers, a.i, a.j, b.i, b.j);
    });

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"mst\" edgedefault=\"undirected\">\n";
    for (size_t k = 0; k < order.size(); ++k)
        out << "    <node id=\"n" << k << "\"><data key=\"label\">"
            << xml_escape(t.tickers[order[k]]) << "</data></node>\n";
    for (const auto& e : es) {
        size_t a = e.i, b = e.j;
        if (t.tickers[b] < t.tickers[a]) std::swap(a, b);
        out << "    <edge source=\"n" << node_id[a] << "\" target=\"n" << node_id[b]
            << "\"><data key=\"weight\">" << fmt17(e.w) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

}  // namespace mstphase
