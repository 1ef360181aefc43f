#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "brc/channel.hpp"
#include "doctest.h"

using namespace brc;

namespace {

Pmf uniform_inputs(int nx, int nx1) {
    std::size_t total = std::size_t(nx) * nx1;
    std::vector<Rational> t(total, Rational(1, long(total)));
    return Pmf({{"X", nx}, {"X1", nx1}}, std::move(t));
}

}  // namespace

TEST_CASE("constructors produce valid channels") {
    CHECK_NOTHROW(make_degraded_cascade(Rational(1, 10), Rational(1, 10), Rational(1, 10)));
    CHECK_NOTHROW(make_degraded_cascade(Rational(1, 10), Rational(1, 10), Rational(1, 10), true));
    CHECK_NOTHROW(make_semi_degraded_cascade(Rational(1, 10), Rational(1, 5), Rational(3, 20)));
    CHECK_NOTHROW(make_bc_only(Rational(1, 10), Rational(1, 5)));
    CHECK_NOTHROW(make_neither(Rational(1, 10)));
    CHECK_THROWS(make_degraded_cascade(Rational(3, 2), Rational(0), Rational(0)));
}

TEST_CASE("validate rejects bad laws") {
    BrcCrChannel ch = make_neither(Rational(1, 10));
    ch.law[0] += Rational(1, 7);
    CHECK_THROWS(ch.validate());
    ch = make_neither(Rational(1, 10));
    ch.law.pop_back();
    CHECK_THROWS(ch.validate());
}

TEST_CASE("classifier on shipped constructions") {
    auto deg = classify_brc_cr(make_degraded_cascade(Rational(1, 10), Rational(1, 10),
                                                     Rational(1, 10)));
    CHECK(deg.kind == DegKind::Degraded);
    for (const auto& v : deg.condition_degraded) CHECK(v.violation == 0.0);  // exact in rationals

    auto semi = classify_brc_cr(make_semi_degraded_cascade(Rational(1, 10), Rational(1, 5),
                                                           Rational(3, 20)));
    CHECK(semi.kind == DegKind::SemiDegraded);
    for (const auto& v : semi.condition_semi) CHECK(v.violation == 0.0);

    auto nei = classify_brc_cr(make_neither(Rational(1, 10)));
    CHECK(nei.kind == DegKind::Neither);
    CHECK_FALSE(nei.satisfies_degraded(1e-9));
    CHECK_FALSE(nei.satisfies_semi_degraded(1e-9));
}

TEST_CASE("classification invariant under output relabeling") {
    BrcCrChannel ch = make_degraded_cascade(Rational(1, 10), Rational(1, 5), Rational(3, 20));
    BrcCrChannel flipped = ch;
    for (int x = 0; x < ch.nx; ++x)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
            for (int y1 = 0; y1 < ch.ny1; ++y1)
                for (int z1 = 0; z1 < ch.nz1; ++z1)
                    for (int y2 = 0; y2 < ch.ny2; ++y2)
                        flipped.at(x, x1, y1, z1, 1 - y2) = ch.at(x, x1, y1, z1, y2);
    CHECK(classify_brc_cr(flipped).kind == classify_brc_cr(ch).kind);
}

TEST_CASE("induced joint matches the law") {
    BrcCrChannel ch = make_semi_degraded_cascade(Rational(1, 10), Rational(1, 5), Rational(3, 20));
    Pmf joint = induced_joint(ch, uniform_inputs(ch.nx, ch.nx1));
    Rational sum(0);
    for (const auto& p : joint.probs()) sum += p;
    CHECK(sum == 1);

    Pmf inputs = joint.marginalize({"X", "X1"});
    for (const auto& p : inputs.probs()) CHECK(p == Rational(1, 4));

    // spot-check one conditional cell against the law
    Pmf cell = joint.marginalize({"X", "X1", "Y1", "Z1", "Y2"});
    std::vector<int> outcome(5);
    // variable order is sorted by marginalize: X, X1, Y1, Y2, Z1
    outcome = {0, 1, 1, 0, 1};
    CHECK(cell.probs()[cell.encode(outcome)] == ch.at(0, 1, 1, 1, 0) / 4);
}

TEST_CASE("aux variables stay on the input side of the markov chain") {
    BrcCrChannel ch = make_degraded_cascade(Rational(1, 10), Rational(1, 5), Rational(3, 20));
    Pmf in = uniform_inputs(ch.nx, ch.nx1);
    in = add_copy(in, "X", "U");
    Pmf joint = induced_joint(ch, in);
    CHECK(joint.markov_violation({"U"}, {"X", "X1"}, {"Y1", "Z1", "Y2"}) == 0.0);
}

TEST_CASE("copy and trivial variables") {
    Pmf in = uniform_inputs(2, 2);
    Pmf with_copy = add_copy(in, "X1", "V0");
    CHECK(with_copy.markov_violation({"V0"}, {"X1"}, {"X"}) == 0.0);
    CHECK(with_copy.mutual_information({"V0"}, {"X1"}) == doctest::Approx(1.0));

    Pmf with_const = add_trivial(in, "U0");
    CHECK(with_const.variables().size() == 3);
    CHECK(with_const.entropy({"U0"}) == 0.0);
}

TEST_CASE("broadcast part and embeddings") {
    BrcCrChannel ch = make_semi_degraded_cascade(Rational(1, 10), Rational(1, 5), Rational(3, 20));
    BroadcastChannel bc = broadcast_part(ch);
    CHECK(bc.nx == ch.nx);
    bc.validate();

    BrcCrChannel silent = embed_bc_silent_relay(bc);
    CHECK(silent.nx1 == 1);
    silent.validate();
    // Z1 duplicates Y1
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2) CHECK(silent.at(x, 0, y1, 1 - y1, y2) == 0);

    BrcChannel obs = embed_bc_relays_observing(bc);
    CHECK(obs.nx1 == 1);
    CHECK(obs.nx2 == 1);
    obs.validate();
    // relays observe the destination outputs exactly
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2)
                CHECK(obs.at(x, 0, 0, y1, y1, y2, y2) == bc.at(x, y1, y2));

    BrcChannel shared = embed_cr_shared_relay(ch);
    CHECK(shared.nx2 == 1);
    shared.validate();
    for (int x = 0; x < 2; ++x)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int z1 = 0; z1 < 2; ++z1)
                    for (int y2 = 0; y2 < 2; ++y2) {
                        CHECK(shared.at(x, x1, 0, y1, z1, y2, z1) == ch.at(x, x1, y1, z1, y2));
                        CHECK(shared.at(x, x1, 0, y1, z1, y2, 1 - z1) == 0);
                    }
}

TEST_CASE("test channel dispatch") {
    TestChannelParams params;
    CHECK(classify_brc_cr(make_test_channel(TestChannelKind::DegradedCascade, params)).kind ==
          DegKind::Degraded);
    CHECK(classify_brc_cr(make_test_channel(TestChannelKind::Neither, params)).kind ==
          DegKind::Neither);
}
