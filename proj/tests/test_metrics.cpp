#include <cmath>

#include "doctest.h"
#include "mstphase/metrics.hpp"
#include "mstphase/synth.hpp"
#include "oracles.hpp"

using namespace mstphase;

namespace {

Tree star(size_t n, double w = 1.0) {
    Tree t;
    for (size_t i = 0; i < n; ++i) t.tickers.push_back("T" + std::to_string(i));
    for (size_t i = 1; i < n; ++i) t.edges.push_back({0, i, w});
    return t;
}

Tree path(size_t n, double w = 1.0) {
    Tree t;
    for (size_t i = 0; i < n; ++i) t.tickers.push_back("T" + std::to_string(i));
    for (size_t i = 1; i < n; ++i) t.edges.push_back({i - 1, i, w});
    return t;
}

// distribution with f(k) proportional to k^-gamma over k = 2..10
DegreeDistribution exact_power_law(double gamma) {
    DegreeDistribution d;
    double total = 0;
    for (int k = 2; k <= 10; ++k) total += std::pow(k, -gamma);
    for (int k = 2; k <= 10; ++k) {
        d.support.push_back(k);
        d.f.push_back(std::pow(k, -gamma) / total);
    }
    d.n_vertices = 1000;
    return d;
}

} // namespace

TEST_CASE("degree distribution counts degrees as fractions") {
    auto d = degree_distribution({1, 1, 1, 2, 3, 3});
    CHECK(d.support == std::vector<int>{1, 2, 3});
    CHECK(d.f[0] == doctest::Approx(0.5));
    CHECK(d.f[1] == doctest::Approx(1.0 / 6));
    CHECK(d.count(3) == 2);
    CHECK(d.count(7) == 0);
    CHECK(d.k_max() == 3);
    double sum = 0;
    for (double f : d.f) sum += f;
    CHECK(std::fabs(sum - 1.0) < 1e-12);
}

TEST_CASE("power-law fit recovers exact exponents") {
    for (double gamma : {2.0, 2.86, 3.0, 3.17}) {
        auto fit = fit_power_law(exact_power_law(gamma));
        CHECK(std::fabs(fit.gamma - gamma) < 1e-9);
        CHECK(fit.std_error < 1e-9);
        CHECK(fit.residual_stddev < 1e-9);
        CHECK(fit.n_points == 9);
    }
}

TEST_CASE("fit respects a custom range") {
    auto fit = fit_power_law(exact_power_law(2.5), 3, 6);
    CHECK(fit.n_points == 4);
    CHECK(fit.fit_lo == 3);
    CHECK(fit.fit_hi == 6);
    CHECK(std::fabs(fit.gamma - 2.5) < 1e-9);
}

TEST_CASE("fit refuses degenerate distributions") {
    DegreeDistribution d;
    d.support = {1, 4};
    d.f = {0.8, 0.2};
    d.n_vertices = 5;
    CHECK_THROWS_AS(fit_power_law(d), DataError); // only k=4 inside [2,10]
}

TEST_CASE("two points pin the line with zero reported error") {
    DegreeDistribution d;
    d.support = {2, 4};
    d.f = {0.64, 0.16};
    d.n_vertices = 100;
    auto fit = fit_power_law(d);
    CHECK(fit.n_points == 2);
    CHECK(fit.gamma == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.std_error == 0.0);
}

TEST_CASE("expected count follows the fitted law") {
    auto fit = fit_power_law(exact_power_law(3.0));
    double at2 = expected_count(fit, 1000, 2);
    double at4 = expected_count(fit, 1000, 4);
    CHECK(at2 / at4 == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("star mean occupation layer at the center is exactly one") {
    for (size_t n : {size_t(2), size_t(5), size_t(50)}) {
        auto t = star(n);
        CHECK(central_vertex(t) == 0);
        CHECK(mean_occupation_layer(t, 0) == 1.0);
    }
}

TEST_CASE("central vertex prefers smaller hop sums among equal degrees") {
    // path of 5: vertices 1,2,3 all have degree 2; vertex 2 has hop sum 6
    auto t = path(5);
    CHECK(central_vertex(t) == 2);
    CHECK(mean_occupation_layer(t, 2) == doctest::Approx(6.0 / 4));
    CHECK(mean_occupation_layer(t, 0) == doctest::Approx(10.0 / 4));
}

TEST_CASE("central vertex falls back to ticker order on full ties") {
    // two opposite hubs of equal degree and symmetric position
    Tree t;
    for (int i = 0; i < 6; ++i) t.tickers.push_back("T" + std::to_string(i));
    t.edges = {{0, 2, 1}, {0, 3, 1}, {0, 1, 1}, {1, 4, 1}, {1, 5, 1}};
    auto deg = degrees(t);
    CHECK(deg[0] == deg[1]);
    CHECK(central_vertex(t) == 0); // "T0" < "T1"
}

TEST_CASE("dynamic center minimizes the occupation layer over max-degree vertices") {
    oracles::XorShift rng(31);
    for (int it = 0; it < 20; ++it) {
        auto t = gen_pa_tree(40, 1000 + it);
        auto deg = degrees(t);
        int kmax = *std::max_element(deg.begin(), deg.end());
        size_t c = central_vertex(t);
        double best = mean_occupation_layer(t, c);
        for (size_t v = 0; v < t.n(); ++v)
            if (deg[v] == kmax) CHECK(best <= mean_occupation_layer(t, v) + 1e-15);
    }
}

TEST_CASE("degree entropy of the five-vertex star") {
    auto d = degree_distribution(degrees(star(5)));
    double expected = -(0.8 * std::log(0.8) + 0.2 * std::log(0.2));
    CHECK(std::fabs(degree_entropy(d) - expected) < 1e-12);
    CHECK(std::fabs(degree_entropy(d) - 0.5004024235381879) < 1e-9);
}

TEST_CASE("efficient entropy of the equal-weight five-vertex star is 2 ln 2") {
    CHECK(std::fabs(efficient_entropy(star(5, 0.7)) - 2 * std::log(2.0)) < 1e-9);
}

TEST_CASE("efficient entropy stays within [0, ln N]") {
    for (int it = 0; it < 50; ++it) {
        oracles::XorShift rng(200 + it);
        auto t = gen_pa_tree(3 + it, 50 + it);
        for (auto& e : t.edges) e.w = rng.uniform(0.05, 2.0);
        double s = efficient_entropy(t);
        CHECK(s >= 0.0);
        CHECK(s <= std::log(static_cast<double>(t.n())) + 1e-12);
    }
}

TEST_CASE("near-zero edge weights are rejected by efficient entropy") {
    auto t = star(4);
    t.edges[1].w = 1e-10;
    CHECK_THROWS_AS(efficient_entropy(t), DataError);
}

TEST_CASE("mean tree length averages edge weights") {
    auto t = path(4, 0.5);
    t.edges[2].w = 2.0;
    CHECK(mean_tree_length(t) == doctest::Approx((0.5 + 0.5 + 2.0) / 3));
}

TEST_CASE("degree gaps report the top three degrees with multiplicity") {
    auto [g1, g2] = degree_gaps({7, 1, 1, 5, 5, 2});
    CHECK(g1 == 2); // 7 - 5
    CHECK(g2 == 0); // 5 - 5
    CHECK_THROWS_AS(degree_gaps({1, 2}), DataError);
}

TEST_CASE("phase labels round trip through text") {
    for (auto k : {PhaseKind::ScaleFree, PhaseKind::Superstar,
                   PhaseKind::DecoratedScaleFree, PhaseKind::Indeterminate})
        CHECK(phase_kind_from(to_string(k)) == k);
    CHECK_THROWS_AS(phase_kind_from("Star"), DataError);
}
