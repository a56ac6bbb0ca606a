#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mstphase/phase.hpp"
#include "mstphase/synth.hpp"

using namespace mstphase;

namespace {

WindowMetrics from_degrees(std::vector<int> degs) {
    WindowMetrics m;
    m.n_vertices = static_cast<int>(degs.size());
    m.degree_distribution = degree_distribution(degs);
    try {
        m.fit = fit_power_law(m.degree_distribution);
    } catch (const DataError&) {
    }
    std::vector<int> top = degs;
    std::sort(top.begin(), top.end(), std::greater<>());
    m.k1 = top.empty() ? 0 : top[0];
    m.k2 = top.size() > 1 ? top[1] : 0;
    m.k3 = top.size() > 2 ? top[2] : 0;
    m.central_vertex = "HUB";
    return m;
}

WindowMetrics from_counts(const std::vector<std::pair<int, int>>& counts) {
    std::vector<int> degs;
    for (auto [k, c] : counts) degs.insert(degs.end(), c, k);
    return from_degrees(std::move(degs));
}

// 479 vertices, clean power-law body over k in [2,10], one degree-90 vertex
const std::vector<std::pair<int, int>> superstar_profile = {
    {1, 259}, {2, 141}, {3, 39}, {4, 17}, {5, 9}, {6, 5},
    {7, 3},   {8, 2},   {9, 2},  {10, 1}, {90, 1}};

// 460 vertices, three moderate hubs above the fitted law, no dominant one
const std::vector<std::pair<int, int>> decorated_profile = {
    {1, 229}, {2, 150}, {3, 41}, {4, 17}, {5, 8},  {6, 5},  {7, 3},
    {8, 2},   {9, 1},   {10, 1}, {20, 1}, {24, 1}, {28, 1}};

} // namespace

TEST_CASE("a dominant gap-separated tail vertex is a dragon king") {
    auto m = from_counts(superstar_profile);
    REQUIRE(m.fit.has_value());
    CHECK(m.fit->gamma == doctest::Approx(2.98).epsilon(0.01));
    CHECK(detect_dragon_king(m.degree_distribution, &*m.fit, Thresholds{}));
    auto label = classify(m, Thresholds{});
    CHECK(label.kind == PhaseKind::Superstar);
    CHECK(label.dragon_king == "HUB");
    CHECK(label.n_outlier_hubs == 0); // the top vertex itself never counts
}

TEST_CASE("several moderate hubs make a decorated tree, not a superstar") {
    auto m = from_counts(decorated_profile);
    REQUIRE(m.fit.has_value());
    CHECK(m.fit->gamma == doctest::Approx(3.17).epsilon(0.01));
    CHECK(!detect_dragon_king(m.degree_distribution, &*m.fit, Thresholds{}));
    auto label = classify(m, Thresholds{});
    CHECK(label.kind == PhaseKind::DecoratedScaleFree);
    CHECK(label.n_outlier_hubs == 2); // k = 28 is the max vertex, judged separately
    CHECK(!label.dragon_king.has_value());
}

TEST_CASE("the dragon-king test outranks the hub count") {
    auto profile = decorated_profile;
    profile.push_back({90, 1});
    auto m = from_counts(profile);
    auto label = classify(m, Thresholds{});
    CHECK(label.kind == PhaseKind::Superstar);
    CHECK(label.n_outlier_hubs == 3); // 28 no longer shields itself as max
}

TEST_CASE("a pure star is a superstar even without a fit") {
    std::vector<std::pair<int, int>> star = {{1, 49}, {49, 1}};
    auto m = from_counts(star);
    CHECK(!m.fit.has_value());
    CHECK(detect_dragon_king(m.degree_distribution, nullptr, Thresholds{}));
    CHECK(classify(m, Thresholds{}).kind == PhaseKind::Superstar);
}

TEST_CASE("a repeated maximal degree blocks the gap condition") {
    std::vector<std::pair<int, int>> twin = {{1, 20}, {2, 5}, {12, 2}};
    auto m = from_counts(twin);
    CHECK(!detect_dragon_king(m.degree_distribution,
                              m.fit ? &*m.fit : nullptr, Thresholds{}));
}

TEST_CASE("a two-vertex tree is indeterminate") {
    auto m = from_counts({{1, 2}});
    CHECK(!m.fit.has_value());
    CHECK(classify(m, Thresholds{}).kind == PhaseKind::Indeterminate);
}

TEST_CASE("a clean preferential-attachment tree reads as scale free") {
    auto m = from_degrees(degrees(gen_pa_tree(466, 3)));
    CHECK(classify(m, Thresholds{}).kind == PhaseKind::ScaleFree);
}

TEST_CASE("the relative-error gate separates scale free from indeterminate") {
    auto m = from_counts(decorated_profile);
    Thresholds strict;
    strict.h_min = 100; // silence the hub path for this check
    strict.rel_err_max = 0.0;
    CHECK(classify(m, strict).kind == PhaseKind::Indeterminate);
    strict.rel_err_max = 10.0;
    CHECK(classify(m, strict).kind == PhaseKind::ScaleFree);
}

TEST_CASE("a rising degree profile cannot be scale free") {
    auto m = from_counts({{1, 60}, {2, 5}, {3, 10}, {4, 25}});
    REQUIRE(m.fit.has_value());
    CHECK(m.fit->gamma < 0);
    Thresholds th;
    th.rel_err_max = 1e9;
    CHECK(classify(m, th).kind == PhaseKind::Indeterminate);
}

TEST_CASE("majority smoothing keeps the documented example intact") {
    using K = PhaseKind;
    std::vector<K> labels = {K::ScaleFree, K::ScaleFree, K::Superstar, K::Superstar,
                             K::DecoratedScaleFree};
    auto sm = smooth_labels(labels, 3);
    CHECK(sm == labels);
    auto ev = transitions(labels, 3);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].from == K::ScaleFree);
    CHECK(ev[0].to == K::Superstar);
    CHECK(ev[0].index == 2);
    CHECK(ev[1].from == K::Superstar);
    CHECK(ev[1].to == K::DecoratedScaleFree);
    CHECK(ev[1].index == 4);
}

TEST_CASE("smoothing removes single-window flicker") {
    using K = PhaseKind;
    std::vector<K> labels = {K::ScaleFree, K::ScaleFree, K::Indeterminate,
                             K::ScaleFree, K::ScaleFree};
    auto sm = smooth_labels(labels, 3);
    CHECK(sm == std::vector<K>(5, K::ScaleFree));
    CHECK(transitions(labels, 3).empty());
}

TEST_CASE("tied votes keep the original label") {
    using K = PhaseKind;
    std::vector<K> labels = {K::ScaleFree, K::Superstar};
    auto sm = smooth_labels(labels, 3); // both windows see one of each
    CHECK(sm == labels);
}

TEST_CASE("width one smoothing is the identity") {
    using K = PhaseKind;
    std::vector<K> labels = {K::ScaleFree, K::Indeterminate, K::Superstar};
    CHECK(smooth_labels(labels, 1) == labels);
}

TEST_CASE("smoothing rejects even or nonpositive windows") {
    std::vector<PhaseKind> labels(3, PhaseKind::ScaleFree);
    CHECK_THROWS_AS(smooth_labels(labels, 2), DataError);
    CHECK_THROWS_AS(smooth_labels(labels, 0), DataError);
    CHECK_THROWS_AS(smooth_labels(labels, -3), DataError);
}

TEST_CASE("constant labels produce no transitions") {
    std::vector<PhaseKind> labels(10, PhaseKind::DecoratedScaleFree);
    CHECK(transitions(labels, 3).empty());
}
