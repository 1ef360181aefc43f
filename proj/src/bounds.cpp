#include "brc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>

#include "brc/parallel.hpp"

namespace brc {

void AuxSpec::validate() const {
    for (int c : {card_v0, card_u0, card_u1, card_u2, card_u3, card_u4})
        if (c < 1) throw std::invalid_argument("aux spec: cardinalities must be >= 1");
    if (budget < 1) throw std::invalid_argument("aux spec: budget must be >= 1");
    if (refine_rounds < 0) throw std::invalid_argument("aux spec: refine rounds must be >= 0");
}

namespace {

VarSet vs(std::initializer_list<std::string> names) { return VarSet(names); }

double mi(const PmfD& j, const VarSet& a, const VarSet& b, const VarSet& c = {}) {
    return j.mutual_information(a, b, c);
}

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

void put(NamedTerms* terms, const std::string& name, double v) {
    if (terms) terms->push_back({name, v});
}

// ---- factorized sampling ---------------------------------------------------

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stratified draw of raw factor weights: sample 0 is the all-uniform point,
// the rest alternate between flat, corner-sharpened and near-uniform rows.
std::vector<double> sample_weights(std::uint64_t seed, int index, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (index == 0) return w;
    std::mt19937_64 rng(mix64(seed ^ mix64(std::uint64_t(index))));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mode = index % 3;
    for (auto& x : w) {
        double v = u(rng);
        if (mode == 1)
            x = -std::log(std::max(v, 1e-12));
        else if (mode == 2)
            x = std::pow(v, 6) + 1e-6;
        else
            x = 0.2 + v;
    }
    return w;
}

// One conditional factor of a chain factorization: P(out | given), the table
// read row by row from the shared weight stream.
struct ChainFactor {
    std::vector<std::string> out;
    std::vector<std::string> given;
};

int card_of(const std::vector<Variable>& vars, const std::string& name) {
    for (const auto& v : vars)
        if (v.name == name) return v.size;
    throw std::logic_error("chain factor references unknown variable " + name);
}

std::size_t chain_weight_count(const std::vector<Variable>& vars,
                               const std::vector<ChainFactor>& chain) {
    std::size_t total = 0;
    for (const auto& f : chain) {
        std::size_t rows = 1, cols = 1;
        for (const auto& n : f.given) rows *= std::size_t(card_of(vars, n));
        for (const auto& n : f.out) cols *= std::size_t(card_of(vars, n));
        total += rows * cols;
    }
    return total;
}

PmfD build_chain_joint(const std::vector<Variable>& vars, const std::vector<ChainFactor>& chain,
                       const std::vector<double>& weights) {
    // Normalized conditional tables, one per factor.
    struct Table {
        std::vector<int> given_slots, out_slots;
        std::vector<int> given_cards, out_cards;
        std::vector<double> probs;  // [row][col]
        std::size_t cols = 1;
    };
    auto slot = [&](const std::string& n) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == n) return int(i);
        throw std::logic_error("chain factor references unknown variable " + n);
    };
    std::vector<Table> tables;
    std::size_t pos = 0;
    for (const auto& f : chain) {
        Table t;
        std::size_t rows = 1;
        for (const auto& n : f.given) {
            t.given_slots.push_back(slot(n));
            t.given_cards.push_back(vars[t.given_slots.back()].size);
            rows *= std::size_t(t.given_cards.back());
        }
        for (const auto& n : f.out) {
            t.out_slots.push_back(slot(n));
            t.out_cards.push_back(vars[t.out_slots.back()].size);
            t.cols *= std::size_t(t.out_cards.back());
        }
        t.probs.resize(rows * t.cols);
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0;
            for (std::size_t c = 0; c < t.cols; ++c) sum += weights[pos + r * t.cols + c];
            for (std::size_t c = 0; c < t.cols; ++c)
                t.probs[r * t.cols + c] = weights[pos + r * t.cols + c] / sum;
        }
        pos += rows * t.cols;
        tables.push_back(std::move(t));
    }
    if (pos != weights.size()) throw std::logic_error("chain weight stream length mismatch");

    std::size_t total = 1;
    for (const auto& v : vars) total *= std::size_t(v.size);
    std::vector<double> table(total);
    std::vector<int> outcome(vars.size());
    double sum = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t k = vars.size(); k-- > 0;) {
            outcome[k] = int(rem % vars[k].size);
            rem /= vars[k].size;
        }
        double p = 1.0;
        for (const auto& t : tables) {
            std::size_t r = 0, c = 0;
            for (std::size_t k = 0; k < t.given_slots.size(); ++k)
                r = r * t.given_cards[k] + std::size_t(outcome[t.given_slots[k]]);
            for (std::size_t k = 0; k < t.out_slots.size(); ++k)
                c = c * t.out_cards[k] + std::size_t(outcome[t.out_slots[k]]);
            p *= t.probs[r * t.cols + c];
        }
        table[idx] = p;
        sum += p;
    }
    for (auto& p : table) p /= sum;
    return PmfD(vars, std::move(table));
}

// ---- generic evaluation engine ---------------------------------------------

struct Family {
    std::size_t n_weights = 0;
    int rows_dim = 2;  // dimension the constraint rows live in
    int out_dim = 2;   // dimension of the reported region
    std::function<PmfD(const std::vector<double>&)> build;  // weights -> full joint
    std::function<std::vector<IneqRow>(const PmfD&, NamedTerms*)> rows;
    std::function<RatePoint(const RatePoint&)> project;  // optional
};

struct Candidate {
    RatePoint pt{};
    int sample_index = -1;
    std::shared_ptr<const PmfD> joint;
};

RatePoint apply_project(const Family& fam, const RatePoint& p) {
    return fam.project ? fam.project(p) : p;
}

std::vector<RatePoint> family_points(const Family& fam, const PmfD& joint) {
    auto rows = fam.rows(joint, nullptr);
    auto verts = polytope_vertices(rows, fam.rows_dim);
    std::vector<RatePoint> out;
    out.reserve(verts.size());
    for (const auto& v : verts) out.push_back(apply_project(fam, v));
    return out;
}

double support_of(const std::vector<RatePoint>& pts, const RatePoint& d) {
    double best = 0;
    for (const auto& p : pts) best = std::max(best, p[0] * d[0] + p[1] * d[1] + p[2] * d[2]);
    return best;
}

// Greedy multiplicative coordinate refinement of the raw factor weights,
// maximizing the support function in one direction. Deterministic.
std::vector<double> refine_weights(const Family& fam, std::vector<double> w, const RatePoint& dir,
                                   int rounds) {
    double best = support_of(family_points(fam, fam.build(w)), dir);
    const double steps[] = {2.5, 0.4};
    for (int round = 0; round < rounds; ++round) {
        bool improved = false;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (double s : steps) {
                double saved = w[i];
                w[i] = saved * s;
                double cand = support_of(family_points(fam, fam.build(w)), dir);
                if (cand > best + 1e-12) {
                    best = cand;
                    improved = true;
                } else {
                    w[i] = saved;
                }
            }
        if (!improved) break;
    }
    return w;
}

RegionEvalReport run_eval(const Family& fam, const AuxSpec& spec,
                          const std::vector<PmfD>& extra_full_joints = {}) {
    spec.validate();
    RegionEvalReport rep;

    // Stage 1: seeded factorized samples, evaluated independently per index so
    // the result is identical for any worker count.
    std::vector<std::vector<Candidate>> per_sample(std::size_t(spec.budget));
    std::vector<std::vector<double>> weights(std::size_t(spec.budget));
    parallel_for(std::size_t(spec.budget), [&](std::size_t k) {
        weights[k] = sample_weights(spec.seed, int(k), fam.n_weights);
        auto joint = std::make_shared<const PmfD>(fam.build(weights[k]));
        for (const auto& p : family_points(fam, *joint))
            per_sample[k].push_back({p, int(k), joint});
    });
    std::vector<Candidate> cands;
    for (auto& bucket : per_sample)
        for (auto& c : bucket) cands.push_back(std::move(c));

    // Stage 2: coordinate refinement. Starts are the per-direction best
    // samples over power-of-two prefixes of the sample stream, so a larger
    // budget only ever adds starts and the region grows monotonically.
    if (spec.refine_rounds > 0) {
        auto dirs = sweep_directions(fam.out_dim);
        std::vector<std::pair<int, std::size_t>> done;  // (sample, direction)
        for (std::size_t di = 0; di < dirs.size(); ++di) {
            const RatePoint& d = dirs[di];
            for (int prefix = 1; prefix <= spec.budget; prefix *= 2) {
                int best_k = -1;
                double best_v = -1;
                for (const auto& c : cands) {
                    if (c.sample_index < 0 || c.sample_index >= prefix) continue;
                    double v = c.pt[0] * d[0] + c.pt[1] * d[1] + c.pt[2] * d[2];
                    if (v > best_v) {
                        best_v = v;
                        best_k = c.sample_index;
                    }
                }
                if (best_k < 0) continue;
                if (std::find(done.begin(), done.end(), std::make_pair(best_k, di)) != done.end())
                    continue;
                done.push_back({best_k, di});
                auto w = refine_weights(fam, weights[std::size_t(best_k)], d, spec.refine_rounds);
                auto joint = std::make_shared<const PmfD>(fam.build(w));
                for (const auto& p : family_points(fam, *joint))
                    cands.push_back({p, -1, joint});
            }
        }
    }

    for (const auto& j : extra_full_joints) {
        auto joint = std::make_shared<const PmfD>(j);
        for (const auto& p : family_points(fam, *joint)) cands.push_back({p, -2, joint});
    }

    std::vector<RatePoint> pts;
    pts.reserve(cands.size());
    for (const auto& c : cands) pts.push_back(c.pt);
    rep.region = hull_of(pts, fam.out_dim);

    // Attach a witness to every region vertex: the candidate whose achieved
    // point dominates the vertex with the least slack.
    for (const auto& v : rep.region.vertices) {
        const Candidate* best = nullptr;
        double best_slack = 0;
        for (const auto& c : cands) {
            bool dominates = true;
            double slack = 0;
            for (int k = 0; k < 3; ++k) {
                if (c.pt[k] < v[k] - 1e-9) dominates = false;
                slack += std::max(0.0, c.pt[k] - v[k]);
            }
            if (!dominates) continue;
            if (!best || slack < best_slack) {
                best = &c;
                best_slack = slack;
            }
        }
        if (!best) {
            rep.warnings.push_back("no dominating witness found for a hull vertex");
            continue;
        }
        WitnessRecord w;
        w.vertex = v;
        w.achieved = best->pt;
        w.sample_index = best->sample_index;
        w.joint = *best->joint;
        fam.rows(w.joint, &w.info_terms);
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

}  // namespace

std::vector<RatePoint> sweep_directions(int dim) {
    std::vector<RatePoint> dirs;
    if (dim == 2) {
        const double quarter = std::acos(-1.0) / 2.0;
        for (int i = 0; i <= 25; ++i) {
            double th = quarter * double(i) / 25.0;
            dirs.push_back({std::cos(th), std::sin(th), 0.0});
        }
    } else {
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b)
                for (int c = 0; c <= 2; ++c) {
                    if (a == 0 && b == 0 && c == 0) continue;
                    double n = std::sqrt(double(a * a + b * b + c * c));
                    dirs.push_back({a / n, b / n, c / n});
                }
    }
    return dirs;
}

PmfD merge_vars(const PmfD& p, const std::string& a, const std::string& b,
                const std::string& merged) {
    int ia = p.var_index(a), ib = p.var_index(b);
    int ca = p.variables()[ia].size, cb = p.variables()[ib].size;
    std::vector<Variable> vars;
    for (std::size_t k = 0; k < p.variables().size(); ++k) {
        if (int(k) == ib) continue;
        if (int(k) == ia)
            vars.push_back({merged, ca * cb});
        else
            vars.push_back(p.variables()[k]);
    }
    std::size_t total = 1;
    for (const auto& v : vars) total *= std::size_t(v.size);
    std::vector<double> table(total, 0.0);
    std::vector<int> outcome, out2;
    PmfD shell(vars, std::vector<double>(total, 1.0 / double(total)));
    for (std::size_t i = 0; i < p.table_size(); ++i) {
        p.decode(i, outcome);
        out2.clear();
        for (std::size_t k = 0; k < p.variables().size(); ++k) {
            if (int(k) == ib) continue;
            if (int(k) == ia)
                out2.push_back(outcome[std::size_t(ia)] * cb + outcome[std::size_t(ib)]);
            else
                out2.push_back(outcome[k]);
        }
        table[shell.encode(out2)] += p.probs()[i];
    }
    return PmfD(std::move(vars), std::move(table));
}

// ---- constraint rows -------------------------------------------------------

std::vector<IneqRow> theorem1_rows(const PmfD& j, NamedTerms* terms) {
    auto user_terms = [&](int b) {
        std::string ub = "U" + std::to_string(b), ud = "U" + std::to_string(b + 2),
                    xb = "X" + std::to_string(b), yb = "Y" + std::to_string(b),
                    zb = "Z" + std::to_string(b);
        double direct = mi(j, vs({ud}), vs({yb}), vs({"U0", "V0", xb, ub}));
        double i1 = mi(j, vs({"U0", ub}), vs({zb}), vs({"V0", xb})) + direct;
        double i2 = mi(j, vs({"U0", "V0", ub, ud, xb}), vs({yb}));
        double j1 = mi(j, vs({ub}), vs({zb}), vs({"U0", "V0", xb})) + direct;
        double j2 = mi(j, vs({ud, ub, xb}), vs({yb}), vs({"U0", "V0"}));
        return std::array<double, 4>{i1, i2, j1, j2};
    };
    auto [i1a, i1b, j1a, j1b] = user_terms(1);
    auto [i2a, i2b, j2a, j2b] = user_terms(2);
    double I1 = std::min(i1a, i1b), J1 = std::min(j1a, j1b);
    double I2 = std::min(i2a, i2b), J2 = std::min(j2a, j2b);
    double IM = mi(j, vs({"U3"}), vs({"U4"}), vs({"U1", "U2", "X1", "X2", "U0", "V0"}));
    double A1 = mi(j, vs({"U0", "U1"}), vs({"X2"}), vs({"X1", "V0"}));
    double A2 = mi(j, vs({"U0", "U2"}), vs({"X1"}), vs({"X2", "V0"}));
    double B3 = mi(j, vs({"U1", "X1"}), vs({"U2"}), vs({"X2", "U0", "V0"}));
    double B4 = mi(j, vs({"U1"}), vs({"U2", "X2"}), vs({"X1", "U0", "V0"}));
    double C5 = mi(j, vs({"U1"}), vs({"U2"}), vs({"X1", "X2", "U0", "V0"}));

    put(terms, "I1_relay", i1a);
    put(terms, "I1_direct", i1b);
    put(terms, "I2_relay", i2a);
    put(terms, "I2_direct", i2b);
    put(terms, "J1_relay", j1a);
    put(terms, "J1_direct", j1b);
    put(terms, "J2_relay", j2a);
    put(terms, "J2_direct", j2b);
    put(terms, "I_M", IM);
    put(terms, "I(U0,U1;X2|X1,V0)", A1);
    put(terms, "I(U0,U2;X1|X2,V0)", A2);
    put(terms, "I(U1,X1;U2|X2,U0,V0)", B3);
    put(terms, "I(U1;U2,X2|X1,U0,V0)", B4);
    put(terms, "I(U1;U2|X1,X2,U0,V0)", C5);

    return {
        {1, 1, 0, clamp0(I1 - A1)},
        {1, 0, 1, clamp0(I2 - A2)},
        {1, 1, 1, clamp0(I1 + J2 - A1 - B3 - IM)},
        {1, 1, 1, clamp0(J1 + I2 - A2 - B4 - IM)},
        {2, 1, 1, clamp0(I1 + I2 - A1 - A2 - C5 - IM)},
    };
}

std::vector<IneqRow> marton_rows(const PmfD& j, NamedTerms* terms) {
    double t1 = mi(j, vs({"U0", "U1"}), vs({"Y1"}));
    double t2 = mi(j, vs({"U0", "U2"}), vs({"Y2"}));
    double p1 = mi(j, vs({"U1"}), vs({"Y1"}), vs({"U0"}));
    double p2 = mi(j, vs({"U2"}), vs({"Y2"}), vs({"U0"}));
    double cr = mi(j, vs({"U1"}), vs({"U2"}), vs({"U0"}));
    put(terms, "I(U0,U1;Y1)", t1);
    put(terms, "I(U0,U2;Y2)", t2);
    put(terms, "I(U1;Y1|U0)", p1);
    put(terms, "I(U2;Y2|U0)", p2);
    put(terms, "I(U1;U2|U0)", cr);
    return {
        {1, 1, 0, clamp0(t1)},
        {1, 0, 1, clamp0(t2)},
        {1, 1, 1, clamp0(t1 + p2 - cr)},
        {1, 1, 1, clamp0(t2 + p1 - cr)},
        {2, 1, 1, clamp0(t1 + t2 - cr)},
    };
}

std::vector<IneqRow> corollary2_rows(const PmfD& j, NamedTerms* terms) {
    double I1 = mi(j, vs({"U0", "V0"}), vs({"Y1"}));
    double I2 = mi(j, vs({"U0", "V0"}), vs({"Y2"}));
    double I3 = mi(j, vs({"U0"}), vs({"Z1"}), vs({"X1", "V0"}));
    double I1p = mi(j, vs({"U1", "X1"}), vs({"Y1"}), vs({"U0", "V0"}));
    double I3p = mi(j, vs({"U1"}), vs({"Z1"}), vs({"U0", "V0", "X1"}));
    double IM = mi(j, vs({"U3"}), vs({"U4"}), vs({"X1", "U1", "U0", "V0"}));
    double D3 = mi(j, vs({"U3"}), vs({"Y1"}), vs({"U1", "U0", "X1", "V0"}));
    // The second user's direct term; the model has no Y4, so Y2 is used.
    double D4 = mi(j, vs({"U4"}), vs({"Y2"}), vs({"U0", "V0"}));
    double K = mi(j, vs({"U0"}), vs({"X1"}), vs({"V0"}));
    double G2 = mi(j, vs({"U0", "V0", "U4"}), vs({"Y2"}));
    put(terms, "I1", I1);
    put(terms, "I2", I2);
    put(terms, "I3", I3);
    put(terms, "I1p", I1p);
    put(terms, "I3p", I3p);
    put(terms, "I_M", IM);
    put(terms, "I(U3;Y1|U1,U0,X1,V0)", D3);
    put(terms, "I(U4;Y2|U0,V0)", D4);
    put(terms, "I(U0;X1|V0)", K);
    put(terms, "I(U0,V0,U4;Y2)", G2);
    return {
        {1, 1, 0, clamp0(std::min(I1 + I1p, I3 + I3p) + D3)},
        {1, 0, 1, clamp0(G2 - K)},
        {1, 1, 1, clamp0(std::min(I2, I3) + I3p + D3 + D4 - K - IM)},
        {1, 1, 1, clamp0(std::min(I2, I1) + I1p + D3 + D4 - K - IM)},
        {2, 1, 1, clamp0(D3 + D4 + I2 + std::min(I1 + I1p, I3 + I3p) - K - IM)},
    };
}

std::vector<IneqRow> theorem3_rows(const PmfD& j, NamedTerms* terms) {
    double common = mi(j, vs({"U"}), vs({"Y2"}));
    double pz = mi(j, vs({"X"}), vs({"Z1"}), vs({"X1", "U"}));
    double py = mi(j, vs({"X", "X1"}), vs({"Y1"}), vs({"U"}));
    double sz = mi(j, vs({"X"}), vs({"Z1"}), vs({"X1"}));
    double sy = mi(j, vs({"X", "X1"}), vs({"Y1"}));
    put(terms, "I(U;Y2)", common);
    put(terms, "I(X;Z1|X1,U)", pz);
    put(terms, "I(X,X1;Y1|U)", py);
    put(terms, "I(X;Z1|X1)", sz);
    put(terms, "I(X,X1;Y1)", sy);
    return {
        {1, 0, 0, clamp0(common)},
        {0, 1, 0, clamp0(std::min(pz, py))},
        {1, 1, 0, clamp0(std::min(sz, sy))},
    };
}

std::vector<IneqRow> conjecture1_rows(const PmfD& j, NamedTerms* terms) {
    double common = mi(j, vs({"U", "V"}), vs({"Y2"}));
    double m1 = std::min(mi(j, vs({"X"}), vs({"Z1"}), vs({"V", "X1"})),
                         mi(j, vs({"X", "X1"}), vs({"Y1"})));
    double m2 = std::min(mi(j, vs({"X"}), vs({"Z1"}), vs({"X1", "V", "U"})),
                         mi(j, vs({"X", "X1"}), vs({"Y1"}), vs({"U", "V"})));
    put(terms, "I(U,V;Y2)", common);
    put(terms, "min{I(X;Z1|V,X1),I(X,X1;Y1)}", m1);
    put(terms, "min{I(X;Z1|X1,V,U),I(X,X1;Y1|U,V)}", m2);
    return {
        {1, 0, 0, clamp0(common)},
        {1, 1, 0, clamp0(m1)},
        {1, 1, 0, clamp0(m2 + common)},
    };
}

std::vector<IneqRow> theorem4_rows(const PmfD& j, NamedTerms* terms) {
    double common =
        std::min(mi(j, vs({"U0", "X1"}), vs({"Y1"})), mi(j, vs({"Z1"}), vs({"U0"}), vs({"X1"})));
    double priv = mi(j, vs({"X"}), vs({"Y2"}), vs({"X1", "U0"}));
    put(terms, "min{I(U0,X1;Y1),I(Z1;U0|X1)}", common);
    put(terms, "I(X;Y2|X1,U0)", priv);
    return {
        {1, 0, 0, clamp0(common)},
        {1, 1, 0, clamp0(common + priv)},
    };
}

// ---- evaluators ------------------------------------------------------------

RegionEvalReport eval_theorem1(const BrcChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {{"V0", spec.card_v0}, {"U0", spec.card_u0},
                                  {"U1", spec.card_u1}, {"U2", spec.card_u2},
                                  {"U3", spec.card_u3}, {"U4", spec.card_u4},
                                  {"X1", ch.nx1},       {"X2", ch.nx2},
                                  {"X", ch.nx}};
    std::vector<ChainFactor> chain = {
        {{"V0"}, {}},
        {{"X1"}, {"V0"}},
        {{"X2"}, {"V0"}},
        {{"U0"}, {"X1", "X2", "V0"}},
        {{"U1", "U2"}, {"U0", "X1", "X2"}},
        {{"U3", "U4", "X"}, {"U1", "U2"}},
    };
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 3;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = theorem1_rows;
    return run_eval(fam, spec);
}

RegionEvalReport eval_marton(const BroadcastChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {
        {"U0", spec.card_u0}, {"U1", spec.card_u1}, {"U2", spec.card_u2}, {"X", ch.nx}};
    std::vector<ChainFactor> chain = {
        {{"U0"}, {}}, {{"U1", "U2"}, {"U0"}}, {{"X"}, {"U0", "U1", "U2"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 3;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = marton_rows;
    return run_eval(fam, spec);
}

RegionEvalReport eval_corollary2(const BrcCrChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {{"V0", spec.card_v0}, {"U0", spec.card_u0},
                                  {"U1", spec.card_u1}, {"U3", spec.card_u3},
                                  {"U4", spec.card_u4}, {"X1", ch.nx1},
                                  {"X", ch.nx}};
    std::vector<ChainFactor> chain = {
        {{"V0"}, {}},
        {{"X1"}, {"V0"}},
        {{"U0"}, {"V0", "X1"}},
        {{"U1"}, {"V0", "U0", "X1"}},
        {{"U3"}, {"V0", "U0", "U1", "X1"}},
        {{"U4"}, {"V0", "U0", "U1", "U3", "X1"}},
        {{"X"}, {"V0", "U0", "U1", "U3", "U4", "X1"}},
    };
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 3;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = corollary2_rows;
    return run_eval(fam, spec);
}

RegionEvalReport eval_theorem3_upper(const BrcCrChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {{"U", spec.card_u0}, {"X1", ch.nx1}, {"X", ch.nx}};
    std::vector<ChainFactor> chain = {{{"U"}, {}}, {{"X1"}, {"U"}}, {{"X"}, {"U", "X1"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 2;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = theorem3_rows;

    // Imported inner-bound witnesses: fold in both the lifted version (the
    // witness auxiliaries merged into U) and the constant-U collapse, whose
    // union covers the witness polytope.
    std::vector<PmfD> extra;
    for (const auto& imp : spec.imported) {
        PmfD lifted = imp;
        if (lifted.has_var("V") && lifted.has_var("U")) lifted = merge_vars(lifted, "V", "U", "U");
        std::vector<std::string> keep;
        for (const auto& n : {"U", "X1", "X"})
            if (lifted.has_var(n)) keep.push_back(n);
        lifted = lifted.marginalize(VarSet(keep));
        if (!lifted.has_var("U")) lifted = add_trivial(lifted, "U");
        extra.push_back(induced_joint(ch, lifted));
        PmfD collapsed = add_trivial(lifted.marginalize(vs({"X1", "X"})), "U");
        extra.push_back(induced_joint(ch, collapsed));
    }

    RegionEvalReport rep = run_eval(fam, spec, extra);
    rep.under_approximates_outer = true;
    rep.warnings.push_back(
        "sampled outer bound: the reported region under-approximates the stated supremum");
    auto cls = classify_brc_cr(ch);
    if (!cls.satisfies_degraded(1e-9))
        rep.warnings.push_back("channel is not degraded; outer bound evaluated anyway");
    return rep;
}

RegionEvalReport eval_conjecture1(const BrcCrChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {
        {"V", spec.card_v0}, {"U", spec.card_u0}, {"X1", ch.nx1}, {"X", ch.nx}};
    std::vector<ChainFactor> chain = {
        {{"V"}, {}}, {{"U"}, {"V"}}, {{"X1"}, {"V", "U"}}, {{"X"}, {"V", "U", "X1"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 2;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = conjecture1_rows;
    return run_eval(fam, spec);
}

RegionEvalReport eval_theorem4(const BrcCrChannel& ch, const AuxSpec& spec) {
    std::vector<Variable> vars = {{"X1", ch.nx1}, {"U0", spec.card_u0}, {"X", ch.nx}};
    std::vector<ChainFactor> chain = {{{"X1"}, {}}, {{"U0"}, {"X1"}}, {{"X"}, {"U0", "X1"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 2;
    fam.build = [&, vars, chain](const std::vector<double>& w) {
        return induced_joint(ch, build_chain_joint(vars, chain, w));
    };
    fam.rows = theorem4_rows;
    RegionEvalReport rep = run_eval(fam, spec);
    auto cls = classify_brc_cr(ch);
    if (!cls.satisfies_semi_degraded(1e-9))
        rep.warnings.push_back("channel is not semi-degraded; region formula evaluated anyway");
    return rep;
}

RegionEvalReport specialize_theorem1(const BroadcastChannel& bc, SpecializeMode mode,
                                     const AuxSpec& spec) {
    if (mode != SpecializeMode::Marton)
        throw std::invalid_argument("broadcast channel input requires marton mode");
    BrcChannel ch = embed_bc_relays_observing(bc);
    // Same factor stream as eval_marton so matched seeds draw matched PDs.
    std::vector<Variable> vars = {
        {"U0", spec.card_u0}, {"U1", spec.card_u1}, {"U2", spec.card_u2}, {"X", bc.nx}};
    std::vector<ChainFactor> chain = {
        {{"U0"}, {}}, {{"U1", "U2"}, {"U0"}}, {{"X"}, {"U0", "U1", "U2"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = fam.out_dim = 3;
    fam.build = [&, vars, chain, ch](const std::vector<double>& w) {
        PmfD base = build_chain_joint(vars, chain, w);
        for (const char* n : {"V0", "U3", "U4", "X1", "X2"}) base = add_trivial(base, n);
        return induced_joint(ch, base);
    };
    fam.rows = theorem1_rows;
    return run_eval(fam, spec);
}

RegionEvalReport specialize_theorem1(const BrcCrChannel& src, SpecializeMode mode,
                                     const AuxSpec& spec) {
    if (mode == SpecializeMode::Marton)
        return specialize_theorem1(broadcast_part(src), mode, spec);
    BrcChannel ch = embed_cr_shared_relay(src);
    // Same factor stream as eval_theorem4 so matched seeds draw matched PDs.
    std::vector<Variable> vars = {{"X1", src.nx1}, {"U0", spec.card_u0}, {"X", src.nx}};
    std::vector<ChainFactor> chain = {{{"X1"}, {}}, {{"U0"}, {"X1"}}, {{"X"}, {"U0", "X1"}}};
    Family fam;
    fam.n_weights = chain_weight_count(vars, chain);
    fam.rows_dim = 3;
    fam.out_dim = 2;
    fam.build = [&, vars, chain, ch](const std::vector<double>& w) {
        PmfD base = build_chain_joint(vars, chain, w);
        base = add_copy(base, "X1", "V0");
        for (const char* n : {"U1", "U2", "U3", "X2"}) base = add_trivial(base, n);
        base = add_copy(base, "X", "U4");
        return induced_joint(ch, base);
    };
    fam.rows = theorem1_rows;
    // User 1 carries only the common message here; private rate rides on the
    // direct link to user 2, so report (R0, R1 + R2).
    fam.project = [](const RatePoint& p) { return RatePoint{p[0], p[1] + p[2], 0.0}; };
    return run_eval(fam, spec);
}

}  // namespace brc
