#include <sstream>

#include "doctest.h"
#include "mstphase/mst.hpp"
#include "oracles.hpp"

using namespace mstphase;

namespace {

DistanceMatrix matrix(const std::vector<std::vector<double>>& d,
                      std::vector<std::string> tickers = {}) {
    DistanceMatrix D;
    size_t n = d.size();
    if (tickers.empty())
        for (size_t i = 0; i < n; ++i) D.tickers.push_back(std::string(1, char('A' + i)));
    else
        D.tickers = std::move(tickers);
    D.d.resize(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) D.at(i, j) = d[i][j];
    return D;
}

} // namespace

TEST_CASE("prim finds the known tree of a small matrix") {
    auto D = matrix({{0.0, 1.0, 4.0, 3.0},
                     {1.0, 0.0, 2.0, 5.0},
                     {4.0, 2.0, 0.0, 1.5},
                     {3.0, 5.0, 1.5, 0.0}});
    auto t = prim_mst(D);
    REQUIRE(t.edges.size() == 3);
    CHECK(t.total_weight() == doctest::Approx(1.0 + 2.0 + 1.5));
    for (const auto& e : t.edges) CHECK(e.i < e.j);
}

TEST_CASE("prim and kruskal agree with exhaustive enumeration on small trees") {
    oracles::XorShift rng(42);
    for (int it = 0; it < 60; ++it) {
        size_t n = 2 + rng.next() % 6; // 2..7
        auto d = oracles::random_distance_matrix(n, rng);
        auto D = matrix(d);
        auto p = prim_mst(D);
        auto k = kruskal_mst(D);
        double exact = oracles::min_spanning_weight_exhaustive(d);
        CHECK(p.total_weight() == doctest::Approx(exact).epsilon(1e-12));
        CHECK(k.total_weight() == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("prim and kruskal produce identical edges, not just weights") {
    oracles::XorShift rng(5);
    for (int it = 0; it < 40; ++it) {
        size_t n = 2 + rng.next() % 29;
        auto D = matrix(oracles::random_distance_matrix(n, rng));
        auto p = prim_mst(D);
        auto k = kruskal_mst(D);
        REQUIRE(p.edges.size() == k.edges.size());
        // exports sort by ticker pair, so equal trees give equal text
        std::ostringstream sp, sk;
        write_edge_list(p, sp);
        write_edge_list(k, sk);
        CHECK(sp.str() == sk.str());
    }
}

TEST_CASE("equal distances resolve to the star at the first ticker") {
    std::vector<std::vector<double>> d(5, std::vector<double>(5, 1.0));
    for (size_t i = 0; i < 5; ++i) d[i][i] = 0;
    auto t = prim_mst(matrix(d, {"DD", "AA", "CC", "BB", "EE"}));
    auto deg = degrees(t);
    // tickers are stored as given; the hub is the lexicographically first one
    size_t hub = 1; // "AA"
    CHECK(deg[hub] == 4);
}

TEST_CASE("mst is deterministic across repeated runs") {
    oracles::XorShift rng(99);
    auto D = matrix(oracles::random_distance_matrix(20, rng));
    auto a = prim_mst(D);
    auto b = prim_mst(D);
    std::ostringstream sa, sb;
    write_edge_list(a, sa);
    write_edge_list(b, sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("degrees sum to twice the edge count and levels match brute force") {
    oracles::XorShift rng(17);
    auto D = matrix(oracles::random_distance_matrix(25, rng));
    auto t = prim_mst(D);
    auto deg = degrees(t);
    int total = 0;
    for (int k : deg) total += k;
    CHECK(total == 2 * static_cast<int>(t.edges.size()));

    std::vector<std::pair<size_t, size_t>> edges;
    for (const auto& e : t.edges) edges.emplace_back(e.i, e.j);
    auto hops = oracles::hop_matrix(t.n(), edges);
    for (size_t root : {size_t(0), size_t(7), size_t(24)}) {
        auto lev = levels(t, root);
        for (size_t v = 0; v < t.n(); ++v) CHECK(lev[v] == hops[root][v]);
    }
}

TEST_CASE("edge list export is sorted, headed, and 17-digit exact") {
    auto D = matrix({{0, 0.123456789012345678, 2},
                     {0.123456789012345678, 0, 0.5},
                     {2, 0.5, 0}});
    auto t = prim_mst(D);
    std::ostringstream s;
    write_edge_list(t, s);
    auto text = s.str();
    CHECK(text.substr(0, 24) == "ticker_i,ticker_j,weight");
    CHECK(text.find("A,B,0.12345678901234568") != std::string::npos);
    CHECK(text.find("B,C,0.5") != std::string::npos);
    CHECK(text.find("A,B") < text.find("B,C"));
}

TEST_CASE("graphml export names every vertex and edge") {
    auto D = matrix({{0, 1, 3}, {1, 0, 1.5}, {3, 1.5, 0}});
    auto t = prim_mst(D);
    std::ostringstream s;
    write_graphml(t, s);
    auto x = s.str();
    CHECK(x.find("<graphml") != std::string::npos);
    CHECK(x.find("A") != std::string::npos);
    size_t nodes = 0, edges = 0, pos = 0;
    while ((pos = x.find("<node ", pos)) != std::string::npos) ++nodes, pos += 5;
    pos = 0;
    while ((pos = x.find("<edge ", pos)) != std::string::npos) ++edges, pos += 5;
    CHECK(nodes == 3);
    CHECK(edges == 2);
}

TEST_CASE("levels from an invalid root is an error") {
    auto D = matrix({{0, 1}, {1, 0}});
    auto t = prim_mst(D);
    CHECK_THROWS_AS(levels(t, 5), DataError);
}
