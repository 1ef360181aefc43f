#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "brc/region.hpp"
#include "doctest.h"

using namespace brc;

TEST_CASE("triangle membership") {
    RateRegion tri = hull_of({{1, 0, 0}, {0, 1, 0}}, 2);
    CHECK(region_contains(tri, {0.5, 0.5, 0}));
    CHECK_FALSE(region_contains(tri, {0.8, 0.8, 0}));
    CHECK(region_contains(tri, {1, 0, 0}, 1e-9));  // boundary
    CHECK(region_contains(tri, {0, 0, 0}));        // downward closure
}

TEST_CASE("inclusion") {
    RateRegion unit = hull_of({{1, 0, 0}, {0, 1, 0}}, 2);
    RateRegion half = hull_of({{0.5, 0, 0}, {0, 0.5, 0}}, 2);
    CHECK(region_includes(unit, unit).included);
    CHECK(region_includes(unit, half).included);
    auto r = region_includes(half, unit);
    CHECK_FALSE(r.included);
    CHECK(r.worst_margin > 0.1);
    // the violator is an extreme vertex of the inner region
    CHECK((std::abs(r.worst_point[0] - 1.0) < 1e-12 || std::abs(r.worst_point[1] - 1.0) < 1e-12));
}

TEST_CASE("support function") {
    RateRegion tri = hull_of({{1, 0, 0}, {0, 1, 0}}, 2);
    CHECK(region_support(tri, {1, 1, 0}) == doctest::Approx(1.0));

    RateRegion box = hull_of({{0.3, 0.7, 0}}, 2);
    CHECK(region_support(box, {1, 0, 0}) == doctest::Approx(0.3));

    RateRegion mix = hull_of({{1, 0, 0}, {0.6, 0.6, 0}, {0, 1, 0}}, 2);
    CHECK(region_support(mix, {1, 1, 0}) == doctest::Approx(1.2));
}

TEST_CASE("hull is idempotent") {
    std::vector<RatePoint> pts = {{1, 0, 0}, {0.6, 0.6, 0}, {0, 1, 0}, {0.2, 0.2, 0}};
    RateRegion a = hull_of(pts, 2);
    RateRegion b = hull_of(a.vertices, 2);
    CHECK(region_includes(a, b).included);
    CHECK(region_includes(b, a).included);
    CHECK(a.vertices.size() == b.vertices.size());
}

TEST_CASE("degenerate point sets") {
    // collinear points collapse to a segment
    RateRegion seg = hull_of({{0.2, 0.2, 0}, {0.4, 0.4, 0}, {0.6, 0.6, 0}}, 2);
    CHECK(region_support(seg, {1, 1, 0}) == doctest::Approx(1.2));
    CHECK(region_contains(seg, {0.3, 0.3, 0}));

    // single point
    RateRegion pt = hull_of({{0.5, 0.25, 0}}, 2);
    CHECK(region_contains(pt, {0.5, 0.25, 0}));
    CHECK_FALSE(region_contains(pt, {0.5, 0.26, 0}));

    // origin only
    RateRegion zero = hull_of({{0, 0, 0}}, 2);
    CHECK(region_support(zero, {1, 1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("3-d hull and inclusion") {
    RateRegion simplex = hull_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(region_contains(simplex, {0.3, 0.3, 0.3}));
    CHECK_FALSE(region_contains(simplex, {0.4, 0.4, 0.4}));
    CHECK(region_support(simplex, {1, 1, 1}) == doctest::Approx(1.0));

    RateRegion inner = hull_of({{0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5}}, 3);
    CHECK(region_includes(simplex, inner).included);
    CHECK_FALSE(region_includes(inner, simplex).included);
}

TEST_CASE("support monotone under inclusion") {
    RateRegion outer = hull_of({{1, 0, 0}, {0.7, 0.7, 0}, {0, 1, 0}}, 2);
    RateRegion inner = hull_of({{0.8, 0, 0}, {0.5, 0.5, 0}}, 2);
    REQUIRE(region_includes(outer, inner).included);
    for (double th : {0.0, 0.3, 0.7, 1.0, 1.4}) {
        RatePoint d{std::cos(th), std::sin(th), 0};
        CHECK(region_support(outer, d) >= region_support(inner, d) - 1e-9);
    }
}

TEST_CASE("pareto prune keeps the frontier") {
    auto kept = pareto_prune({{0.5, 0.5, 0}, {0.4, 0.4, 0}, {1, 0, 0}, {0.5, 0.5, 0}}, 2);
    CHECK(kept.size() == 2);
    for (const auto& p : kept) CHECK((p[0] == 1.0 || p[1] == 0.5));
}

TEST_CASE("polytope vertices of simple systems") {
    // R0 <= 1, R1 <= 1, R0 + R1 <= 1.5
    std::vector<IneqRow> rows = {{1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1.5}};
    auto verts = polytope_vertices(rows, 2);
    auto has = [&](double a, double b) {
        return std::any_of(verts.begin(), verts.end(), [&](const RatePoint& v) {
            return std::abs(v[0] - a) < 1e-9 && std::abs(v[1] - b) < 1e-9;
        });
    };
    CHECK(has(1, 0.5));
    CHECK(has(0.5, 1));
    CHECK(has(1, 0));
    CHECK(has(0, 1));

    // clamped degenerate polytope
    auto zero = polytope_vertices({{1, 1, 0, 0}}, 2);
    REQUIRE(!zero.empty());
    for (const auto& v : zero) {
        CHECK(v[0] == doctest::Approx(0.0));
        CHECK(v[1] == doctest::Approx(0.0));
    }
}

TEST_CASE("3-d polytope vertices") {
    // unit cube cut by a sum constraint
    std::vector<IneqRow> rows = {
        {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 2}};
    auto verts = polytope_vertices(rows, 3);
    RateRegion reg = hull_of(verts, 3);
    CHECK(region_support(reg, {1, 1, 1}) == doctest::Approx(2.0));
    CHECK(region_support(reg, {1, 0, 0}) == doctest::Approx(1.0));
    CHECK(region_contains(reg, {1, 1, 0}));
    CHECK_FALSE(region_contains(reg, {1, 1, 0.1}));
}
