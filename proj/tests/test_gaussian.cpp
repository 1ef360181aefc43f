#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "brc/gaussian.hpp"
#include "brc/region.hpp"
#include "doctest.h"

using namespace brc;

TEST_CASE("capacity function") {
    CHECK(cap(0.0) == 0.0);
    CHECK(cap(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cap(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS(cap(-0.1));
}

TEST_CASE("parameter validation") {
    GaussianBrcParams p;
    CHECK_NOTHROW(p.validate());
    p.N1t = 0.0;
    CHECK_THROWS(p.validate());
    CHECK_THROWS(SweepSpec::uniform(1));
    SweepSpec s = SweepSpec::uniform(5);
    CHECK_NOTHROW(s.validate());
    s.beta.back() = 0.9;  // endpoint missing
    CHECK_THROWS(s.validate());
}

TEST_CASE("hand-evaluated cell") {
    GaussianBrcParams p;  // all ones
    GaussianCell c = gaussian_cell(p, 1.0, 1.0, 1.0);
    // beta = 1 kills the coherent term, so the combined power is P + P1 = 2
    CHECK(c.r0_bound == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-15));
    CHECK(c.r1_cooperative == 0.0);
    CHECK(c.r1_relay == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.sum_bound == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("trivial slices") {
    GaussianBrcParams p;
    // alpha = 0: no power on the common layer
    GaussianCell a0 = gaussian_cell(p, 0.0, 1.0, 1.0);
    CHECK(a0.r0_bound == 0.0);
    // beta = 0: relay observation carries nothing
    GaussianCell b0 = gaussian_cell(p, 0.5, 0.0, 1.0);
    CHECK(b0.sum_bound == 0.0);
    CHECK(b0.r1_relay == 0.0);
}

TEST_CASE("region anchors at unit parameters") {
    GaussianBrcParams p;
    auto rep = gaussian_region(p, SweepSpec::uniform(26));
    CHECK(region_support(rep.region, {1, 1, 0}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(region_support(rep.region, {1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(region_support(rep.region, {0, 1, 0}) == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(rep.witnesses.size() == rep.region.vertices.size());
}

TEST_CASE("extremes") {
    GaussianBrcParams p;
    auto sweep = SweepSpec::uniform(26);
    auto ex = gaussian_extremes(p, sweep);
    CHECK(ex.r1_only == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ex.r1_cell.beta == doctest::Approx(1.0));
    CHECK(ex.r1_cell.gamma == doctest::Approx(1.0));
    CHECK(ex.r0_only == doctest::Approx(0.5).epsilon(1e-12));

    // doubling the source power never shrinks a corner
    GaussianBrcParams p2 = p;
    p2.P *= 2;
    auto ex2 = gaussian_extremes(p2, sweep);
    CHECK(ex2.r0_only >= ex.r0_only - 1e-12);
    CHECK(ex2.r1_only >= ex.r1_only - 1e-12);

    GaussianBrcParams tiny = p;
    tiny.P = 1e-12;
    tiny.P1 = 1e-12;
    auto ex0 = gaussian_extremes(tiny, sweep);
    CHECK(ex0.r0_only == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(ex0.r1_only == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("monotone in powers, antitone in noises") {
    GaussianBrcParams p;
    auto sweep = SweepSpec::uniform(16);
    auto base = gaussian_region(p, sweep);

    GaussianBrcParams more = p;
    more.P = 2.0;
    CHECK(region_includes(gaussian_region(more, sweep).region, base.region).included);

    more = p;
    more.P1 = 2.0;
    CHECK(region_includes(gaussian_region(more, sweep).region, base.region).included);

    GaussianBrcParams noisy = p;
    noisy.N1 = 2.0;
    CHECK(region_includes(base.region, gaussian_region(noisy, sweep).region).included);
    noisy = p;
    noisy.N2 = 2.0;
    CHECK(region_includes(base.region, gaussian_region(noisy, sweep).region).included);
    noisy = p;
    noisy.N1t = 2.0;
    CHECK(region_includes(base.region, gaussian_region(noisy, sweep).region).included);
}

TEST_CASE("sum bound dominates every point") {
    GaussianBrcParams p{2.0, 1.5, 0.7, 1.1, 0.9};
    auto rep = gaussian_region(p, SweepSpec::uniform(16));
    double lim = cap(p.P / p.N1t);
    for (const auto& v : rep.region.vertices) {
        CHECK(v[0] + v[1] <= lim + 1e-9);
        CHECK(v[1] <= lim + 1e-9);
    }
}

TEST_CASE("grid refinement only grows the region") {
    GaussianBrcParams p{1.7, 0.8, 1.0, 1.3, 1.1};
    auto coarse = gaussian_region(p, SweepSpec::uniform(11));
    auto fine = gaussian_region(p, SweepSpec::uniform(21));
    CHECK(region_includes(fine.region, coarse.region).included);
}

TEST_CASE("matched noise aligns the two cooperative arguments") {
    // With N1 = N2 the numerators of the common-rate argument at alpha and the
    // cooperative private argument at 1 - alpha coincide.
    GaussianBrcParams p;
    p.N1 = p.N2 = 1.3;
    for (double alpha : {0.2, 0.5, 0.8})
        for (double beta : {0.3, 0.9}) {
            double s = p.P + p.P1 + 2.0 * std::sqrt((1 - beta) * p.P * p.P1);
            GaussianCell c0 = gaussian_cell(p, alpha, beta, 1.0);
            GaussianCell c1 = gaussian_cell(p, 1.0 - alpha, beta, 1.0);
            double num0 = (std::pow(2.0, 2.0 * c0.r0_bound) - 1.0) * ((1 - alpha) * s + p.N2);
            double num1 = (std::pow(2.0, 2.0 * c1.r1_cooperative) - 1.0) * p.N1;
            CHECK(num0 == doctest::Approx(num1).epsilon(1e-9));
        }
}
