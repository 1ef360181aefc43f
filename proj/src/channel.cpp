#include "brc/channel.hpp"

#include <random>

namespace brc {

namespace {

void check_rows(const std::vector<Rational>& law, std::size_t rows, std::size_t row_size,
                const char* what) {
    if (law.size() != rows * row_size)
        throw std::invalid_argument(std::string(what) + ": law table size mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
        Rational sum{0};
        for (std::size_t j = 0; j < row_size; ++j) {
            const Rational& p = law[r * row_size + j];
            if (p < 0) throw std::invalid_argument(std::string(what) + ": negative entry");
            sum += p;
        }
        if (sum != 1)
            throw std::invalid_argument(std::string(what) + ": conditional row does not sum to 1");
    }
}

Rational bsc(const Rational& p, int in, int out) { return in == out ? 1 - p : p; }

void check_prob(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("crossover probability outside [0,1]");
}

}  // namespace

void BrcCrChannel::validate() const { check_rows(law, rows(), row_size(), "BrcCrChannel"); }
void BrcChannel::validate() const { check_rows(law, rows(), row_size(), "BrcChannel"); }
void BroadcastChannel::validate() const {
    check_rows(law, std::size_t(nx), std::size_t(ny1) * ny2, "BroadcastChannel");
}

namespace {

// Shared joint builder: appends `outs` to the input distribution's variables and
// multiplies each input cell by the channel row selected by `sel`.
template <typename T>
T law_as(const Rational& p) {
    if constexpr (std::is_same_v<T, double>)
        return to_double(p);
    else
        return p;
}

template <typename T, typename RowFn>
BasicPmf<T> build_joint(const BasicPmf<T>& input, const std::vector<Variable>& outs,
                        RowFn row_prob) {
    std::vector<Variable> vars = input.variables();
    for (const auto& v : outs) vars.push_back(v);
    std::size_t out_total = 1;
    for (const auto& v : outs) out_total *= static_cast<std::size_t>(v.size);

    std::vector<T> table;
    table.reserve(input.table_size() * out_total);
    std::vector<int> in_outcome, out_outcome(outs.size());
    for (std::size_t i = 0; i < input.table_size(); ++i) {
        input.decode(i, in_outcome);
        const T& pin = input.probs()[i];
        for (std::size_t j = 0; j < out_total; ++j) {
            std::size_t rem = j;
            for (std::size_t k = outs.size(); k-- > 0;) {
                out_outcome[k] = static_cast<int>(rem % outs[k].size);
                rem /= outs[k].size;
            }
            table.push_back(pin == T{0} ? T{0}
                                        : T(pin * law_as<T>(row_prob(in_outcome, out_outcome))));
        }
    }
    return BasicPmf<T>(std::move(vars), std::move(table));
}

template <typename T>
BasicPmf<T> induced_joint_cr(const BrcCrChannel& ch, const BasicPmf<T>& input_dist) {
    int ix = input_dist.var_index("X");
    int ix1 = input_dist.var_index("X1");
    if (input_dist.variables()[ix].size != ch.nx || input_dist.variables()[ix1].size != ch.nx1)
        throw std::invalid_argument("induced_joint: input alphabet mismatch");
    std::vector<Variable> outs = {{"Y1", ch.ny1}, {"Z1", ch.nz1}, {"Y2", ch.ny2}};
    return build_joint(input_dist, outs, [&](const std::vector<int>& in, const std::vector<int>& o) {
        return ch.at(in[ix], in[ix1], o[0], o[1], o[2]);
    });
}

template <typename T>
BasicPmf<T> induced_joint_full(const BrcChannel& ch, const BasicPmf<T>& input_dist) {
    int ix = input_dist.var_index("X");
    int ix1 = input_dist.var_index("X1");
    int ix2 = input_dist.var_index("X2");
    if (input_dist.variables()[ix].size != ch.nx || input_dist.variables()[ix1].size != ch.nx1 ||
        input_dist.variables()[ix2].size != ch.nx2)
        throw std::invalid_argument("induced_joint: input alphabet mismatch");
    std::vector<Variable> outs = {{"Y1", ch.ny1}, {"Z1", ch.nz1}, {"Y2", ch.ny2}, {"Z2", ch.nz2}};
    return build_joint(input_dist, outs, [&](const std::vector<int>& in, const std::vector<int>& o) {
        return ch.at(in[ix], in[ix1], in[ix2], o[0], o[1], o[2], o[3]);
    });
}

template <typename T>
BasicPmf<T> induced_joint_bc(const BroadcastChannel& ch, const BasicPmf<T>& input_dist) {
    int ix = input_dist.var_index("X");
    if (input_dist.variables()[ix].size != ch.nx)
        throw std::invalid_argument("induced_joint: input alphabet mismatch");
    std::vector<Variable> outs = {{"Y1", ch.ny1}, {"Y2", ch.ny2}};
    return build_joint(input_dist, outs, [&](const std::vector<int>& in, const std::vector<int>& o) {
        return ch.at(in[ix], o[0], o[1]);
    });
}

}  // namespace

Pmf induced_joint(const BrcCrChannel& ch, const Pmf& input_dist) {
    return induced_joint_cr(ch, input_dist);
}
PmfD induced_joint(const BrcCrChannel& ch, const PmfD& input_dist) {
    return induced_joint_cr(ch, input_dist);
}

Pmf induced_joint(const BrcChannel& ch, const Pmf& input_dist) {
    return induced_joint_full(ch, input_dist);
}
PmfD induced_joint(const BrcChannel& ch, const PmfD& input_dist) {
    return induced_joint_full(ch, input_dist);
}

Pmf induced_joint(const BroadcastChannel& ch, const Pmf& input_dist) {
    return induced_joint_bc(ch, input_dist);
}
PmfD induced_joint(const BroadcastChannel& ch, const PmfD& input_dist) {
    return induced_joint_bc(ch, input_dist);
}

namespace {

template <typename T>
BasicPmf<T> add_copy_impl(const BasicPmf<T>& p, const std::string& src,
                          const std::string& copy_name) {
    int is = p.var_index(src);
    int size = p.variables()[is].size;
    std::vector<Variable> vars = p.variables();
    vars.push_back({copy_name, size});
    std::vector<T> table(p.table_size() * size, T{0});
    std::vector<int> outcome;
    for (std::size_t i = 0; i < p.table_size(); ++i) {
        p.decode(i, outcome);
        table[i * size + outcome[is]] = p.probs()[i];
    }
    return BasicPmf<T>(std::move(vars), std::move(table));
}

template <typename T>
BasicPmf<T> add_trivial_impl(const BasicPmf<T>& p, const std::string& name) {
    std::vector<Variable> vars = p.variables();
    vars.push_back({name, 1});
    return BasicPmf<T>(std::move(vars), p.probs());
}

}  // namespace

Pmf add_copy(const Pmf& p, const std::string& src, const std::string& c) {
    return add_copy_impl(p, src, c);
}
Pmf add_trivial(const Pmf& p, const std::string& n) { return add_trivial_impl(p, n); }
PmfD add_copy(const PmfD& p, const std::string& src, const std::string& c) {
    return add_copy_impl(p, src, c);
}
PmfD add_trivial(const PmfD& p, const std::string& n) { return add_trivial_impl(p, n); }

bool DegradednessClass::satisfies_degraded(double tol) const {
    for (const auto& c : condition_degraded)
        if (c.violation > tol) return false;
    return true;
}
bool DegradednessClass::satisfies_semi_degraded(double tol) const {
    for (const auto& c : condition_semi)
        if (c.violation > tol) return false;
    return true;
}

DegradednessClass classify_brc_cr(const BrcCrChannel& ch, const InputFamilySpec& family,
                                  double tol) {
    ch.validate();

    // Full-support input family: uniform plus seeded random rational tables.
    std::vector<Pmf> inputs;
    std::size_t cells = std::size_t(ch.nx) * ch.nx1;
    {
        std::vector<Rational> uniform(cells, Rational(1, long(cells)));
        inputs.emplace_back(std::vector<Variable>{{"X", ch.nx}, {"X1", ch.nx1}},
                            std::move(uniform));
    }
    std::mt19937_64 rng(family.seed);
    for (int s = 0; s < family.n_random; ++s) {
        std::vector<Rational> w(cells);
        Rational sum{0};
        for (auto& v : w) {
            v = Rational(1 + long(rng() % 97));
            sum += v;
        }
        for (auto& v : w) v /= sum;
        inputs.emplace_back(std::vector<Variable>{{"X", ch.nx}, {"X1", ch.nx1}}, std::move(w));
    }

    DegradednessClass out;
    out.condition_degraded = {{"X -(X1,Z1)- (Y1,Y2)", 0.0}, {"(X,X1) - Y1 - Y2", 0.0}};
    out.condition_semi = {{"X -(X1,Z1)- Y1", 0.0}, {"X -(Y2,X1)- Z1", 0.0}};
    for (const auto& in : inputs) {
        Pmf joint = induced_joint(ch, in);
        auto update = [&](ChainViolation& cv, const VarSet& a, const VarSet& b, const VarSet& c) {
            cv.violation = std::max(cv.violation, joint.markov_violation(a, b, c));
        };
        update(out.condition_degraded[0], {"X"}, {"X1", "Z1"}, {"Y1", "Y2"});
        update(out.condition_degraded[1], {"X", "X1"}, {"Y1"}, {"Y2"});
        update(out.condition_semi[0], {"X"}, {"X1", "Z1"}, {"Y1"});
        update(out.condition_semi[1], {"X"}, {"Y2", "X1"}, {"Z1"});
    }

    bool deg = out.satisfies_degraded(tol);
    bool semi = out.satisfies_semi_degraded(tol);
    out.kind = deg && semi ? DegKind::Both
               : deg       ? DegKind::Degraded
               : semi      ? DegKind::SemiDegraded
                           : DegKind::Neither;
    return out;
}

std::string deg_kind_name(DegKind k) {
    switch (k) {
        case DegKind::Degraded: return "Degraded";
        case DegKind::SemiDegraded: return "SemiDegraded";
        case DegKind::Both: return "Both";
        case DegKind::Neither: return "Neither";
    }
    return "?";
}

BrcCrChannel make_degraded_cascade(const Rational& q, const Rational& r, const Rational& s,
                                   bool xor_relay) {
    check_prob(q);
    check_prob(r);
    check_prob(s);
    BrcCrChannel ch;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int z1 = 0; z1 < 2; ++z1)
                    for (int y2 = 0; y2 < 2; ++y2) {
                        int relay_in = xor_relay ? (z1 ^ x1) : z1;
                        ch.at(x, x1, y1, z1, y2) =
                            bsc(q, x, z1) * bsc(r, relay_in, y1) * bsc(s, y1, y2);
                    }
    ch.validate();
    return ch;
}

BrcCrChannel make_semi_degraded_cascade(const Rational& p, const Rational& q, const Rational& r) {
    check_prob(p);
    check_prob(q);
    check_prob(r);
    BrcCrChannel ch;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int z1 = 0; z1 < 2; ++z1)
                    for (int y2 = 0; y2 < 2; ++y2)
                        ch.at(x, x1, y1, z1, y2) =
                            bsc(p, x, y2) * bsc(q, y2, z1) * bsc(r, z1 ^ x1, y1);
    ch.validate();
    return ch;
}

BrcCrChannel make_bc_only(const Rational& p1, const Rational& p2) {
    check_prob(p1);
    check_prob(p2);
    BrcCrChannel ch;
    ch.nx1 = 1;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2)
                ch.at(x, 0, y1, y1, y2) = bsc(p1, x, y1) * bsc(p2, y1, y2);
    ch.validate();
    return ch;
}

BrcCrChannel make_neither(const Rational& p) {
    check_prob(p);
    BrcCrChannel ch;
    ch.nz1 = 1;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < 2; ++x)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int y2 = 0; y2 < 2; ++y2)
                ch.at(x, x1, x, 0, y2) = bsc(p, x, y2);
    ch.validate();
    return ch;
}

BrcCrChannel make_test_channel(TestChannelKind kind, const TestChannelParams& prm) {
    switch (kind) {
        case TestChannelKind::DegradedCascade:
            return make_degraded_cascade(prm.p, prm.q, prm.r, prm.xor_relay);
        case TestChannelKind::SemiDegradedCascade:
            return make_semi_degraded_cascade(prm.p, prm.q, prm.r);
        case TestChannelKind::BcOnly: return make_bc_only(prm.p, prm.q);
        case TestChannelKind::Neither: return make_neither(prm.p);
    }
    throw std::invalid_argument("make_test_channel: unknown kind");
}

BroadcastChannel broadcast_part(const BrcCrChannel& ch, int x1_fixed) {
    BroadcastChannel bc;
    bc.nx = ch.nx;
    bc.ny1 = ch.ny1;
    bc.ny2 = ch.ny2;
    bc.law.assign(std::size_t(bc.nx) * bc.ny1 * bc.ny2, Rational(0));
    for (int x = 0; x < ch.nx; ++x)
        for (int y1 = 0; y1 < ch.ny1; ++y1)
            for (int z1 = 0; z1 < ch.nz1; ++z1)
                for (int y2 = 0; y2 < ch.ny2; ++y2)
                    bc.at(x, y1, y2) += ch.at(x, x1_fixed, y1, z1, y2);
    bc.validate();
    return bc;
}

BrcCrChannel embed_bc_silent_relay(const BroadcastChannel& bc) {
    BrcCrChannel ch;
    ch.nx = bc.nx;
    ch.nx1 = 1;
    ch.ny1 = bc.ny1;
    ch.nz1 = bc.ny1;
    ch.ny2 = bc.ny2;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < ch.nx; ++x)
        for (int y1 = 0; y1 < ch.ny1; ++y1)
            for (int y2 = 0; y2 < ch.ny2; ++y2)
                ch.at(x, 0, y1, y1, y2) = bc.at(x, y1, y2);
    ch.validate();
    return ch;
}

BrcChannel embed_bc_relays_observing(const BroadcastChannel& bc) {
    BrcChannel ch;
    ch.nx = bc.nx;
    ch.nx1 = 1;
    ch.nx2 = 1;
    ch.ny1 = bc.ny1;
    ch.nz1 = bc.ny1;
    ch.ny2 = bc.ny2;
    ch.nz2 = bc.ny2;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < ch.nx; ++x)
        for (int y1 = 0; y1 < ch.ny1; ++y1)
            for (int y2 = 0; y2 < ch.ny2; ++y2)
                ch.at(x, 0, 0, y1, y1, y2, y2) = bc.at(x, y1, y2);
    ch.validate();
    return ch;
}

BrcChannel embed_cr_shared_relay(const BrcCrChannel& src) {
    BrcChannel ch;
    ch.nx = src.nx;
    ch.nx1 = src.nx1;
    ch.nx2 = 1;
    ch.ny1 = src.ny1;
    ch.nz1 = src.nz1;
    ch.ny2 = src.ny2;
    ch.nz2 = src.nz1;
    ch.law.assign(ch.rows() * ch.row_size(), Rational(0));
    for (int x = 0; x < ch.nx; ++x)
        for (int x1 = 0; x1 < ch.nx1; ++x1)
            for (int y1 = 0; y1 < ch.ny1; ++y1)
                for (int z1 = 0; z1 < ch.nz1; ++z1)
                    for (int y2 = 0; y2 < ch.ny2; ++y2)
                        ch.at(x, x1, 0, y1, z1, y2, z1) = src.at(x, x1, y1, z1, y2);
    ch.validate();
    return ch;
}

}  // namespace brc
