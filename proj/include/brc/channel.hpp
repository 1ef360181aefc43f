#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brc/pmf.hpp"

namespace brc {

// Broadcast relay channel with a common relay: P(y1, z1, y2 | x, x1).
struct BrcCrChannel {
    int nx = 2, nx1 = 2, ny1 = 2, nz1 = 2, ny2 = 2;
    // Indexed [x][x1][y1][z1][y2], outputs varying fastest.
    std::vector<Rational> law;

    std::size_t rows() const { return std::size_t(nx) * nx1; }
    std::size_t row_size() const { return std::size_t(ny1) * nz1 * ny2; }
    Rational& at(int x, int x1, int y1, int z1, int y2) {
        return law[(((std::size_t(x) * nx1 + x1) * ny1 + y1) * nz1 + z1) * ny2 + y2];
    }
    const Rational& at(int x, int x1, int y1, int z1, int y2) const {
        return law[(((std::size_t(x) * nx1 + x1) * ny1 + y1) * nz1 + z1) * ny2 + y2];
    }
    void validate() const;
};

// Full two-relay broadcast relay channel: P(y1, z1, y2, z2 | x, x1, x2).
struct BrcChannel {
    int nx = 2, nx1 = 2, nx2 = 2, ny1 = 2, nz1 = 2, ny2 = 2, nz2 = 2;
    // Indexed [x][x1][x2][y1][z1][y2][z2], outputs varying fastest.
    std::vector<Rational> law;

    std::size_t rows() const { return std::size_t(nx) * nx1 * nx2; }
    std::size_t row_size() const { return std::size_t(ny1) * nz1 * ny2 * nz2; }
    Rational& at(int x, int x1, int x2, int y1, int z1, int y2, int z2) {
        return law[(((((std::size_t(x) * nx1 + x1) * nx2 + x2) * ny1 + y1) * nz1 + z1) * ny2 +
                    y2) *
                       nz2 +
                   z2];
    }
    const Rational& at(int x, int x1, int x2, int y1, int z1, int y2, int z2) const {
        return const_cast<BrcChannel*>(this)->at(x, x1, x2, y1, z1, y2, z2);
    }
    void validate() const;
};

// Plain two-user broadcast channel P(y1, y2 | x), used for the Marton baseline.
struct BroadcastChannel {
    int nx = 2, ny1 = 2, ny2 = 2;
    std::vector<Rational> law;  // [x][y1][y2]
    Rational& at(int x, int y1, int y2) {
        return law[(std::size_t(x) * ny1 + y1) * ny2 + y2];
    }
    const Rational& at(int x, int y1, int y2) const {
        return law[(std::size_t(x) * ny1 + y1) * ny2 + y2];
    }
    void validate() const;
};

// Composes an input distribution (which may carry auxiliary variables) with the
// channel law. The result is the full joint over input-side variables plus the
// channel outputs; by construction (aux, inputs) - inputs - outputs is Markov.
Pmf induced_joint(const BrcCrChannel& ch, const Pmf& input_dist);
Pmf induced_joint(const BrcChannel& ch, const Pmf& input_dist);
Pmf induced_joint(const BroadcastChannel& ch, const Pmf& input_dist);
PmfD induced_joint(const BrcCrChannel& ch, const PmfD& input_dist);
PmfD induced_joint(const BrcChannel& ch, const PmfD& input_dist);
PmfD induced_joint(const BroadcastChannel& ch, const PmfD& input_dist);

// Adds a variable `copy_name` that duplicates the value of `src` (useful for
// tied auxiliaries such as X2 = X1), or a constant size-1 variable.
Pmf add_copy(const Pmf& p, const std::string& src, const std::string& copy_name);
Pmf add_trivial(const Pmf& p, const std::string& name);
PmfD add_copy(const PmfD& p, const std::string& src, const std::string& copy_name);
PmfD add_trivial(const PmfD& p, const std::string& name);

enum class DegKind { Degraded, SemiDegraded, Both, Neither };

struct ChainViolation {
    std::string chain;     // human-readable Markov chain
    double violation = 0;  // max conditional MI over the input family, bits
};

struct DegradednessClass {
    DegKind kind = DegKind::Neither;
    // Condition (I): X -(X1,Z1)- (Y1,Y2) and (X,X1) - Y1 - Y2.
    // Condition (II): X -(X1,Z1)- Y1 and X -(Y2,X1)- Z1.
    std::vector<ChainViolation> condition_degraded;
    std::vector<ChainViolation> condition_semi;

    bool satisfies_degraded(double tol) const;
    bool satisfies_semi_degraded(double tol) const;
};

struct InputFamilySpec {
    int n_random = 16;
    std::uint64_t seed = 0xB12C;
};

// Degradedness per Definition-3 Markov conditions, required to hold for every
// member of a family of full-support input distributions over (X, X1).
DegradednessClass classify_brc_cr(const BrcCrChannel& ch, const InputFamilySpec& family = {},
                                  double tol = 1e-9);

std::string deg_kind_name(DegKind k);

// Canonical binary test-channel constructors. All BSC crossover probabilities
// must lie in [0, 1].
//
//   degraded_cascade:       Z1 = BSC(q)(X), Y1 = BSC(r)(Z1 [^ X1]), Y2 = BSC(s)(Y1)
//   semi_degraded_cascade:  Y2 = BSC(p)(X), Z1 = BSC(q)(Y2), Y1 = BSC(r)(Z1 ^ X1)
//   bc_only:                X1 silent, Y1 = BSC(p1)(X), Z1 = Y1, Y2 = BSC(p2)(Y1)
//   neither:                Z1 constant, Y1 = X, Y2 = BSC(p)(X)
BrcCrChannel make_degraded_cascade(const Rational& q, const Rational& r, const Rational& s,
                                   bool xor_relay = false);
BrcCrChannel make_semi_degraded_cascade(const Rational& p, const Rational& q, const Rational& r);
BrcCrChannel make_bc_only(const Rational& p1, const Rational& p2);
BrcCrChannel make_neither(const Rational& p);

enum class TestChannelKind { DegradedCascade, SemiDegradedCascade, BcOnly, Neither };

struct TestChannelParams {
    Rational p = Rational(1, 10);
    Rational q = Rational(1, 10);
    Rational r = Rational(1, 10);
    bool xor_relay = false;
};

BrcCrChannel make_test_channel(TestChannelKind kind, const TestChannelParams& params);

// Extracts the broadcast part P(y1, y2 | x) under a fixed relay input.
BroadcastChannel broadcast_part(const BrcCrChannel& ch, int x1_fixed = 0);

// Embeds a BC into a BRC-CR with a silent relay observing Y1 (Z1 = Y1, |X1| = 1).
BrcCrChannel embed_bc_silent_relay(const BroadcastChannel& bc);

// Embeds a BC into a two-relay channel whose relays are silent (|X1|=|X2|=1)
// and observe the destination outputs: Z1 = Y1, Z2 = Y2.
BrcChannel embed_bc_relays_observing(const BroadcastChannel& bc);

// Embeds a common-relay channel into the two-relay model: X2 is a dummy
// (|X2| = 1) and Z2 duplicates Z1, so both relay observations coincide.
BrcChannel embed_cr_shared_relay(const BrcCrChannel& ch);

}  // namespace brc
