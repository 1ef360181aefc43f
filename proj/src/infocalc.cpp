#include "brc/infocalc.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "brc/channel.hpp"
#include "brc/pmf.hpp"
#include "brc/region.hpp"

namespace brc::info {

namespace {
const char* kGroundNames[kGroundCount] = {"V0", "U0", "U1", "U2", "U3", "U4",
                                          "X1", "X2", "Y1", "Y2", "Z1", "Z2"};
const char* kRateNames[kRateCount] = {"R0", "R1", "R2", "S01", "S02", "S1", "S2",
                                      "S3", "S4", "T0", "T1", "T2", "T3", "T4"};
}  // namespace

std::string ground_var_name(GroundVar v) { return kGroundNames[v]; }
std::string rate_sym_name(RateSym s) { return kRateNames[s]; }

std::string subset_name(SubsetMask m) {
    std::string out;
    for (int v = 0; v < kGroundCount; ++v)
        if (m & (1u << v)) {
            if (!out.empty()) out += ",";
            out += kGroundNames[v];
        }
    return out;
}

void EntropyForm::add(SubsetMask m, const Rational& c) {
    if (c == 0) return;
    auto it = coeffs.find(m);
    if (it == coeffs.end()) {
        coeffs.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

EntropyForm& EntropyForm::operator+=(const EntropyForm& o) {
    for (const auto& [m, c] : o.coeffs) add(m, c);
    return *this;
}
EntropyForm& EntropyForm::operator-=(const EntropyForm& o) {
    for (const auto& [m, c] : o.coeffs) add(m, -c);
    return *this;
}
EntropyForm& EntropyForm::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs.clear();
        return *this;
    }
    for (auto& [m, v] : coeffs) v *= c;
    return *this;
}

double EntropyForm::evaluate(const std::map<SubsetMask, double>& entropies) const {
    double out = 0;
    for (const auto& [m, c] : coeffs) {
        if (m == 0) {
            out += to_double(c);
            continue;
        }
        auto it = entropies.find(m);
        if (it == entropies.end()) throw std::logic_error("evaluate: missing entropy for subset");
        out += to_double(c) * it->second;
    }
    return out;
}

EntropyForm entropy_term(SubsetMask s) {
    if (s == 0) throw std::invalid_argument("entropy_term: empty subset");
    EntropyForm f;
    f.add(s, 1);
    return f;
}

EntropyForm constant_term(const Rational& c) {
    EntropyForm f;
    f.add(0, c);
    return f;
}

EntropyForm info_term(SubsetMask a, SubsetMask b, SubsetMask c) {
    if (a == 0 || b == 0) throw std::invalid_argument("info_term: empty argument set");
    if ((a & b) || (a & c) || (b & c))
        throw std::invalid_argument("info_term: argument sets must be disjoint");
    EntropyForm f;
    f.add(SubsetMask(a | c), 1);
    f.add(SubsetMask(b | c), 1);
    f.add(SubsetMask(a | b | c), -1);
    if (c != 0) f.add(c, -1);
    return f;
}

std::string format_form(const EntropyForm& f) {
    if (f.coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.coeffs) {
        Rational abs_c = c < 0 ? -c : c;
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (abs_c != 1 || m == 0) os << rational_to_string(abs_c);
        if (m != 0) {
            if (abs_c != 1) os << "*";
            os << "H(" << subset_name(m) << ")";
        }
        first = false;
    }
    return os.str();
}

std::string format_form_as_info_terms(const EntropyForm& f) {
    EntropyForm rest = f;
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rational& mult, SubsetMask p1, SubsetMask p2) {
        SubsetMask cond = SubsetMask(p1 & p2);
        os << (first ? "" : " + ");
        if (mult != 1) os << rational_to_string(mult) << "*";
        os << "I(" << subset_name(SubsetMask(p1 & ~cond)) << ";"
           << subset_name(SubsetMask(p2 & ~cond));
        if (cond) os << "|" << subset_name(cond);
        os << ")";
        first = false;
    };
    for (;;) {
        // Largest subset with a negative coefficient is a candidate H(A,B,C).
        SubsetMask big = 0;
        for (const auto& [m, c] : rest.coeffs)
            if (m != 0 && c < 0 && m > big) big = m;
        if (big == 0) break;
        std::vector<std::pair<SubsetMask, Rational>> pos;
        for (const auto& [m, c] : rest.coeffs)
            if (m != 0 && c > 0) pos.push_back({m, c});
        SubsetMask pick1 = 0, pick2 = 0;
        Rational pick_mult = 0;
        for (std::size_t i = 0; i < pos.size() && pick_mult == 0; ++i)
            for (std::size_t j = i + 1; j < pos.size() && pick_mult == 0; ++j) {
                SubsetMask p1 = pos[i].first, p2 = pos[j].first;
                if (SubsetMask(p1 | p2) != big) continue;
                SubsetMask cond = SubsetMask(p1 & p2);
                Rational mult = -rest.coeffs.at(big);
                mult = std::min(mult, pos[i].second);
                mult = std::min(mult, pos[j].second);
                if (cond) {
                    auto it = rest.coeffs.find(cond);
                    Rational avail = it == rest.coeffs.end() ? Rational(0) : -it->second;
                    mult = std::min(mult, avail);
                }
                if (mult <= 0) continue;
                pick1 = p1;
                pick2 = p2;
                pick_mult = mult;
            }
        if (pick_mult == 0) break;
        SubsetMask cond = SubsetMask(pick1 & pick2);
        EntropyForm term =
            info_term(SubsetMask(pick1 & ~cond), SubsetMask(pick2 & ~cond), cond);
        term *= pick_mult;
        rest -= term;
        emit(pick_mult, pick1, pick2);
    }
    if (!rest.is_zero()) {
        os << (first ? "" : " + ") << "[" << format_form(rest) << "]";
        first = false;
    }
    if (first) return "0";
    return os.str();
}

bool LinearInfoInequality::rate_is_zero() const {
    for (const auto& c : rate)
        if (c != 0) return false;
    return true;
}

void LinearInfoInequality::normalize() {
    BigInt lcm_den = 1, gcd_num = 0;
    auto fold = [&](const Rational& c) {
        if (c == 0) return;
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    };
    for (const auto& c : rate) fold(c);
    for (const auto& [m, c] : rhs.coeffs) fold(c);
    Rational scale(lcm_den);
    auto fold2 = [&](const Rational& c) {
        if (c == 0) return;
        BigInt n = numerator(Rational(c * scale));
        gcd_num = boost::multiprecision::gcd(gcd_num, n < 0 ? BigInt(-n) : n);
    };
    for (const auto& c : rate) fold2(c);
    for (const auto& [m, c] : rhs.coeffs) fold2(c);
    if (gcd_num == 0) throw std::logic_error("normalize: zero row");
    scale /= Rational(gcd_num);
    for (auto& c : rate) c *= scale;
    rhs *= scale;
    if (rel == Relation::Eq) {
        // Canonical sign: first nonzero coefficient positive.
        Rational lead = 0;
        for (const auto& c : rate)
            if (c != 0) {
                lead = c;
                break;
            }
        if (lead == 0)
            for (const auto& [m, c] : rhs.coeffs)
                if (c != 0) {
                    lead = c;
                    break;
                }
        if (lead < 0) {
            for (auto& c : rate) c = -c;
            rhs *= Rational(-1);
        }
    }
}

std::string LinearInfoInequality::key() const {
    std::ostringstream os;
    os << (rel == Relation::Le ? "<=" : "==") << "|";
    for (int i = 0; i < kRateCount; ++i)
        if (rate[i] != 0) os << kRateNames[i] << ":" << rational_to_string(rate[i]) << ";";
    os << "|";
    for (const auto& [m, c] : rhs.coeffs) os << m << ":" << rational_to_string(c) << ";";
    return os.str();
}

std::string LinearInfoInequality::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < kRateCount; ++i) {
        if (rate[i] == 0) continue;
        Rational a = rate[i];
        os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        Rational abs_a = a < 0 ? -a : a;
        if (abs_a != 1) os << rational_to_string(abs_a) << "*";
        os << kRateNames[i];
        first = false;
    }
    if (first) os << "0";
    os << (rel == Relation::Le ? " <= " : " == ");
    os << format_form_as_info_terms(rhs);
    return os.str();
}

EqualitySystem::EqualitySystem(const std::vector<EntropyForm>& forms) {
    for (EntropyForm f : forms) {
        reduce(f);
        if (f.is_zero()) continue;
        // Pivot: lexicographically largest subset bitmask.
        SubsetMask pivot = 0;
        for (const auto& [m, c] : f.coeffs)
            if (m > pivot) pivot = m;
        Rational lead = f.coeffs.at(pivot);
        f *= Rational(1) / lead;
        // Back-substitute into the existing echelon.
        for (auto& [p, e] : echelon_) {
            auto it = e.coeffs.find(pivot);
            if (it != e.coeffs.end()) {
                Rational c = it->second;
                EntropyForm scaled = f;
                scaled *= c;
                e -= scaled;
            }
        }
        echelon_.emplace_back(pivot, std::move(f));
        std::sort(echelon_.begin(), echelon_.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
    }
}

void EqualitySystem::reduce(EntropyForm& f) const {
    for (const auto& [pivot, e] : echelon_) {
        auto it = f.coeffs.find(pivot);
        if (it == f.coeffs.end()) continue;
        Rational c = it->second;
        EntropyForm scaled = e;
        scaled *= c;
        f -= scaled;
    }
}

LinearInfoInequality canonicalize(LinearInfoInequality ineq, const EqualitySystem& eqs) {
    eqs.reduce(ineq.rhs);
    ineq.normalize();
    return ineq;
}

namespace {

struct UserSyms {
    GroundVar ub, ub2, xb, xbar, yb, zb;
    RateSym sb, sb2, s0b, tb, tb2;
};

UserSyms user(int b) {
    if (b == 1) return {kU1, kU3, kX1, kX2, kY1, kZ1, kS1, kS3, kS01, kT1, kT3};
    return {kU2, kU4, kX2, kX1, kY2, kZ2, kS2, kS4, kS02, kT2, kT4};
}

LinearInfoInequality row(std::string label, std::initializer_list<std::pair<RateSym, int>> lhs,
                         EntropyForm rhs, Relation rel = Relation::Le) {
    LinearInfoInequality r;
    r.label = std::move(label);
    for (auto [s, c] : lhs) r.rate[s] += c;
    r.rhs = std::move(rhs);
    r.rel = rel;
    return r;
}

// Common auxiliary-variable conditioning masks.
const SubsetMask kM_V0 = mask_of(kV0);
const SubsetMask kM_U0V0 = subset(kU0, kV0);

EntropyForm marton_cross() {  // I(U2;U1|X1,X2,U0,V0)
    return info_term(mask_of(kU2), mask_of(kU1), subset(kX1, kX2, kU0, kV0));
}

}  // namespace

ConstraintSystem build_theorem1_system() {
    ConstraintSystem sys;
    auto& rows = sys.rows;

    // Marton binning of the common layer.
    rows.push_back(row("bin-common", {{kR0, 1}, {kS01, 1}, {kS02, 1}, {kT0, -1}},
                       info_term(mask_of(kU0), subset(kX1, kX2), kM_V0) * Rational(-1)));

    for (int b : {1, 2}) {
        UserSyms u = user(b);
        std::string sb = std::to_string(b);
        // Marton binning of the relay-decoded layer.
        rows.push_back(
            row("bin-user." + sb, {{u.sb, 1}, {u.tb, -1}},
                info_term(mask_of(u.ub), mask_of(u.xbar), subset(u.xb, kU0, kV0)) * Rational(-1)));
        // Relay decoding.
        rows.push_back(row("relay-decode." + sb, {{u.tb, 1}},
                           info_term(mask_of(u.ub), mask_of(u.zb), kM_U0V0 | mask_of(u.xb))));
        rows.push_back(row("relay-decode-common." + sb, {{kT0, 1}, {u.tb, 1}},
                           info_term(mask_of(u.ub), mask_of(u.zb), kM_U0V0 | mask_of(u.xb)) +
                               info_term(mask_of(kU0), subset(u.zb, u.xb), kM_V0)));
        // Backward decoding at the destinations.
        rows.push_back(row("dest-decode-direct." + sb, {{u.tb2, 1}},
                           info_term(mask_of(u.ub2), mask_of(u.yb),
                                     kM_U0V0 | mask_of(u.xb) | mask_of(u.ub))));
        rows.push_back(row("dest-decode-pair." + sb, {{u.tb, 1}, {u.tb2, 1}},
                           info_term(subset(u.ub2, u.ub, u.xb), mask_of(u.yb), kM_U0V0)));
        rows.push_back(row("dest-decode-all." + sb, {{kT0, 1}, {u.tb, 1}, {u.tb2, 1}},
                           info_term(subset(kV0, kU0), mask_of(u.yb)) +
                               info_term(mask_of(u.xb), subset(u.yb, kU0), kM_V0) +
                               info_term(subset(u.ub2, u.ub), mask_of(u.yb),
                                         kM_U0V0 | mask_of(u.xb))));
        // Message recombination R_b = S_{b+2} + S_b + S_{0b}.
        rows.push_back(row("rate." + sb, {{RateSym(kR0 + b), 1}, {u.sb2, -1}, {u.sb, -1}, {u.s0b, -1}},
                           EntropyForm{}, Relation::Eq));
        // Bin ordering T_b >= S_b, T_{b+2} >= S_{b+2}.
        rows.push_back(row("ord." + sb, {{u.sb, 1}, {u.tb, -1}}, EntropyForm{}));
        rows.push_back(row("ord." + std::to_string(b + 2), {{u.sb2, 1}, {u.tb2, -1}}, EntropyForm{}));
    }

    // Joint Marton step for (U1, U2).
    {
        UserSyms u1 = user(1), u2 = user(2);
        EntropyForm rhs =
            info_term(mask_of(kU1), mask_of(kX2), subset(kX1, kU0, kV0)) +
            info_term(mask_of(kU2), mask_of(kX1), subset(kX2, kU0, kV0)) + marton_cross();
        rows.push_back(
            row("bin-user-pair", {{u1.sb, 1}, {u2.sb, 1}, {u1.tb, -1}, {u2.tb, -1}}, rhs * Rational(-1)));
    }
    // Direct-layer Marton step for (U3, U4).
    rows.push_back(row("bin-direct-pair", {{kS3, 1}, {kS4, 1}, {kT3, -1}, {kT4, -1}},
                       info_term(mask_of(kU3), mask_of(kU4),
                                 subset(kU1, kU2, kX1, kX2, kU0, kV0)) *
                           Rational(-1)));

    // Nonnegativity.
    for (RateSym s : {kR0, kR1, kR2, kS01, kS02, kS1, kS2, kS3, kS4, kT0})
        rows.push_back(row("nonneg." + std::string(kRateNames[s]), {{s, -1}}, EntropyForm{}));

    sys.equalities = builtin_equalities();
    return sys;
}

namespace {

EntropyForm term_I(int b, int branch) {
    UserSyms u = user(b);
    if (branch == 1)
        return info_term(subset(kU0, u.ub), mask_of(u.zb), kM_V0 | mask_of(u.xb)) +
               info_term(mask_of(u.ub2), mask_of(u.yb), kM_U0V0 | mask_of(u.xb) | mask_of(u.ub));
    return info_term(subset(kU0, kV0, u.ub, u.ub2, u.xb), mask_of(u.yb));
}

EntropyForm term_J(int b, int branch) {
    UserSyms u = user(b);
    if (branch == 1)
        return info_term(mask_of(u.ub), mask_of(u.zb), kM_U0V0 | mask_of(u.xb)) +
               info_term(mask_of(u.ub2), mask_of(u.yb), kM_U0V0 | mask_of(u.xb) | mask_of(u.ub));
    return info_term(subset(u.ub2, u.ub, u.xb), mask_of(u.yb), kM_U0V0);
}

EntropyForm term_IM() {
    return info_term(mask_of(kU3), mask_of(kU4), subset(kU1, kU2, kX1, kX2, kU0, kV0));
}

EntropyForm term_A(int b) {  // I(U0,U_b; X_bbar | X_b, V0)
    UserSyms u = user(b);
    return info_term(subset(kU0, u.ub), mask_of(u.xbar), kM_V0 | mask_of(u.xb));
}

}  // namespace

std::vector<LinearInfoInequality> theorem1_targets() {
    std::vector<LinearInfoInequality> t;
    auto add = [&](std::string label, std::initializer_list<std::pair<RateSym, int>> lhs,
                   EntropyForm rhs) { t.push_back(row(std::move(label), lhs, std::move(rhs))); };

    for (int i : {1, 2}) {
        add("inner:R0+R1|I1." + std::to_string(i), {{kR0, 1}, {kR1, 1}}, term_I(1, i) - term_A(1));
        add("inner:R0+R2|I2." + std::to_string(i), {{kR0, 1}, {kR2, 1}}, term_I(2, i) - term_A(2));
    }
    // I(U1,X1;U2|X2,U0,V0) and I(U1;U2,X2|X1,U0,V0).
    EntropyForm cross_b3 = info_term(subset(kU1, kX1), mask_of(kU2), subset(kX2, kU0, kV0));
    EntropyForm cross_b4 = info_term(mask_of(kU1), subset(kU2, kX2), subset(kX1, kU0, kV0));
    for (int i : {1, 2})
        for (int j : {1, 2}) {
            add("inner:sum|I1." + std::to_string(i) + "+J2." + std::to_string(j),
                {{kR0, 1}, {kR1, 1}, {kR2, 1}},
                term_I(1, i) + term_J(2, j) - term_A(1) - cross_b3 - term_IM());
            add("inner:sum|J1." + std::to_string(i) + "+I2." + std::to_string(j),
                {{kR0, 1}, {kR1, 1}, {kR2, 1}},
                term_J(1, i) + term_I(2, j) - term_A(2) - cross_b4 - term_IM());
            add("inner:2R0|I1." + std::to_string(i) + "+I2." + std::to_string(j),
                {{kR0, 2}, {kR1, 1}, {kR2, 1}},
                term_I(1, i) + term_I(2, j) - term_A(1) - term_A(2) - marton_cross() - term_IM());
        }
    return t;
}

std::vector<EntropyForm> builtin_equalities() {
    // Conditional independences of the auxiliary-codebook factorization
    // P(V0) P(X1|V0) P(X2|V0) P(U0|X1,X2,V0) P(U1,U2|U0,X1,X2) P(U3,U4,X|U1,U2).
    std::vector<EntropyForm> eqs;
    eqs.push_back(info_term(mask_of(kX1), mask_of(kX2), kM_V0));
    eqs.push_back(info_term(subset(kU1, kU2), mask_of(kV0), subset(kU0, kX1, kX2)));
    eqs.push_back(info_term(subset(kU3, kU4), subset(kU0, kV0, kX1, kX2), subset(kU1, kU2)));
    return eqs;
}

std::vector<EntropyForm> load_equalities(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open equality list: " + path);
    nlohmann::json j;
    in >> j;
    auto to_mask = [](const nlohmann::json& arr) {
        SubsetMask m = 0;
        for (const auto& name : arr) {
            bool found = false;
            for (int v = 0; v < kGroundCount; ++v)
                if (name.get<std::string>() == kGroundNames[v]) {
                    m |= SubsetMask(1u << v);
                    found = true;
                }
            if (!found)
                throw std::runtime_error("equality list: unknown variable " +
                                         name.get<std::string>());
        }
        return m;
    };
    std::vector<EntropyForm> eqs;
    for (const auto& item : j.at("zero_mutual_informations"))
        eqs.push_back(info_term(to_mask(item.at("a")), to_mask(item.at("b")),
                                item.contains("given") ? to_mask(item.at("given")) : 0));
    return eqs;
}

std::vector<RateSym> default_elimination_order() {
    return {kT3, kT4, kS3, kS4, kT1, kT2, kS1, kS2, kT0, kS01, kS02};
}

namespace {

void add_scaled(LinearInfoInequality& dst, const Rational& c, const LinearInfoInequality& src) {
    for (int i = 0; i < kRateCount; ++i) dst.rate[i] += c * src.rate[i];
    EntropyForm scaled = src.rhs;
    scaled *= c;
    dst.rhs += scaled;
}

std::string merge_labels(const std::string& a, const std::string& b) {
    std::string out = a + "+" + b;
    if (out.size() > 120) out = out.substr(0, 117) + "...";
    return out;
}

// Dedupe by canonical key (after reducing modulo the equality identities),
// keeping the copy combined from the fewest source rows. Pure-entropy
// byproducts (no rate symbols left) are moved into `facts`.
void tidy(std::vector<LinearInfoInequality>& rows, std::vector<EntropyForm>& facts,
          const EqualitySystem& eqs) {
    std::vector<LinearInfoInequality> keep;
    std::map<std::string, std::size_t> seen;
    for (auto& r : rows) {
        eqs.reduce(r.rhs);
        bool zero_rate = r.rate_is_zero();
        if (zero_rate && r.rhs.is_zero()) continue;  // 0 <= 0
        r.normalize();
        if (zero_rate) {
            facts.push_back(r.rhs);
            continue;
        }
        std::string k = r.key();
        auto it = seen.find(k);
        if (it != seen.end()) {
            if (std::popcount(r.history) < std::popcount(keep[it->second].history))
                keep[it->second] = std::move(r);
            continue;
        }
        seen[k] = keep.size();
        keep.push_back(std::move(r));
    }
    rows = std::move(keep);
}

}  // namespace

FmResult fm_eliminate(const ConstraintSystem& sys, const std::vector<RateSym>& vars,
                      std::vector<std::string>* dump_steps) {
    FmResult res;
    EqualitySystem eqs(sys.equalities);
    std::vector<LinearInfoInequality> rows = sys.rows;
    if (rows.size() <= 64)
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].history = 1ull << i;
    tidy(rows, res.entropy_facts, eqs);
    res.max_intermediate_rows = rows.size();

    auto dump = [&](const std::string& header) {
        if (!dump_steps) return;
        std::ostringstream os;
        os << header << " (" << rows.size() << " rows)\n";
        for (const auto& r : rows) os << "  " << r.to_string() << "\n";
        dump_steps->push_back(os.str());
    };
    dump("initial system");

    int steps = 0;
    for (RateSym v : vars) {
        ++steps;
        // Equality substitution first.
        int eq_idx = -1;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].rel == Relation::Eq && rows[i].rate[v] != 0) {
                eq_idx = int(i);
                break;
            }
        if (eq_idx >= 0) {
            LinearInfoInequality eq = rows[eq_idx];
            rows.erase(rows.begin() + eq_idx);
            Rational piv = eq.rate[v];
            for (auto& r : rows) {
                if (r.rate[v] == 0) continue;
                add_scaled(r, -r.rate[v] / piv, eq);
                r.history |= eq.history;
            }
        } else {
            std::vector<LinearInfoInequality> zero, pos, neg;
            for (auto& r : rows) {
                if (r.rate[v] == 0)
                    zero.push_back(std::move(r));
                else if (r.rate[v] > 0)
                    pos.push_back(std::move(r));
                else
                    neg.push_back(std::move(r));
            }
            for (const auto& p : pos)
                for (const auto& n : neg) {
                    // combined = (-n_v) * p + (p_v) * n, coefficient of v cancels.
                    LinearInfoInequality combined = p;
                    for (auto& c : combined.rate) c *= -n.rate[v];
                    combined.rhs *= -n.rate[v];
                    add_scaled(combined, p.rate[v], n);
                    combined.rel = Relation::Le;
                    combined.label = merge_labels(p.label, n.label);
                    combined.history = p.history | n.history;
                    // A row combined from more than steps+1 source rows is a
                    // redundant consequence of other produced rows.
                    if (std::popcount(combined.history) > steps + 1) continue;
                    zero.push_back(std::move(combined));
                }
            rows = std::move(zero);
        }
        tidy(rows, res.entropy_facts, eqs);
        // A row whose source set strictly contains another row's source set is
        // a redundant combination of it with further rows.
        if (!rows.empty() && rows.front().history != 0) {
            std::vector<bool> drop(rows.size(), false);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < rows.size() && !drop[i]; ++j) {
                    if (i == j || drop[j]) continue;
                    std::uint64_t hi = rows[i].history, hj = rows[j].history;
                    if ((hi & hj) == hj && hi != hj) drop[i] = true;
                }
            std::vector<LinearInfoInequality> kept;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (!drop[i]) kept.push_back(std::move(rows[i]));
            rows = std::move(kept);
        }
        res.max_intermediate_rows = std::max(res.max_intermediate_rows, rows.size());
        dump("after eliminating " + rate_sym_name(v));
    }

    // Dedupe the collected facts as well.
    {
        std::vector<EntropyForm> uniq;
        std::map<std::string, bool> seen;
        for (auto& f : res.entropy_facts) {
            std::ostringstream os;
            for (const auto& [m, c] : f.coeffs) os << m << ":" << rational_to_string(c) << ";";
            if (!seen.count(os.str())) {
                seen[os.str()] = true;
                uniq.push_back(std::move(f));
            }
        }
        res.entropy_facts = std::move(uniq);
    }
    res.rows = std::move(rows);
    return res;
}

namespace {

// Builds a random joint over the nine input-side variables following the
// codebook factorization, pushes it through a random memoryless channel and
// returns numeric entropies for the requested ground-set subsets.
std::map<SubsetMask, double> sample_entropies(std::mt19937_64& rng,
                                              const std::vector<SubsetMask>& needed) {
    auto runif = [&] { return std::uniform_real_distribution<double>(0.02, 1.0)(rng); };
    auto random_rows = [&](int given, int out) {
        std::vector<double> t(std::size_t(given) * out);
        for (int g = 0; g < given; ++g) {
            double sum = 0;
            for (int o = 0; o < out; ++o) {
                t[std::size_t(g) * out + o] = runif();
                sum += t[std::size_t(g) * out + o];
            }
            for (int o = 0; o < out; ++o) t[std::size_t(g) * out + o] /= sum;
        }
        return t;
    };

    auto p_v0 = random_rows(1, 2);
    auto p_x1 = random_rows(2, 2);     // | v0
    auto p_x2 = random_rows(2, 2);     // | v0
    auto p_u0 = random_rows(8, 2);     // | x1,x2,v0
    auto p_u12 = random_rows(8, 4);    // | u0,x1,x2 -> (u1,u2)
    auto p_u34x = random_rows(4, 8);   // | u1,u2 -> (u3,u4,x)
    auto chan = random_rows(8, 16);    // | x,x1,x2 -> (y1,z1,y2,z2)

    // Variable order: V0,U0,U1,U2,U3,U4,X1,X2,X,Y1,Y2,Z1,Z2.
    std::vector<Variable> vars = {{"V0", 2}, {"U0", 2}, {"U1", 2}, {"U2", 2}, {"U3", 2},
                                  {"U4", 2}, {"X1", 2}, {"X2", 2}, {"X", 2},  {"Y1", 2},
                                  {"Y2", 2}, {"Z1", 2}, {"Z2", 2}};
    std::vector<double> table(1u << 13);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        int bits[13];
        std::size_t rem = idx;
        for (int k = 13; k-- > 0;) {
            bits[k] = int(rem & 1);
            rem >>= 1;
        }
        int v0 = bits[0], u0 = bits[1], u1 = bits[2], u2 = bits[3], u3 = bits[4], u4 = bits[5],
            x1 = bits[6], x2 = bits[7], x = bits[8], y1 = bits[9], y2 = bits[10], z1 = bits[11],
            z2 = bits[12];
        double p = p_v0[v0] * p_x1[v0 * 2 + x1] * p_x2[v0 * 2 + x2] *
                   p_u0[((x1 * 2 + x2) * 2 + v0) * 2 + u0] *
                   p_u12[((u0 * 2 + x1) * 2 + x2) * 4 + (u1 * 2 + u2)] *
                   p_u34x[(u1 * 2 + u2) * 8 + ((u3 * 2 + u4) * 2 + x)] *
                   chan[((x * 2 + x1) * 2 + x2) * 16 + (((y1 * 2 + z1) * 2 + y2) * 2 + z2)];
        table[idx] = p;
    }
    // Normalize away accumulated round-off so the Pmf validator is happy.
    double total = 0;
    for (double p : table) total += p;
    for (double& p : table) p /= total;
    PmfD joint(vars, table);

    std::map<SubsetMask, double> out;
    for (SubsetMask m : needed) {
        if (m == 0 || out.count(m)) continue;
        std::vector<std::string> names;
        for (int v = 0; v < kGroundCount; ++v)
            if (m & (1u << v)) names.push_back(kGroundNames[v]);
        out[m] = joint.entropy(VarSet(names));
    }
    return out;
}

bool rate_dominated(const LinearInfoInequality& s, const LinearInfoInequality& t) {
    for (int i = 0; i < kRateCount; ++i)
        if (s.rate[i] > t.rate[i]) return false;
    return true;
}

bool is_plain_nonneg_row(const LinearInfoInequality& r) {
    if (!r.rhs.is_zero()) return false;
    for (const auto& c : r.rate)
        if (c > 0) return false;
    return true;
}

}  // namespace

DeriveReport derive_and_compare(const DeriveOptions& opts) {
    DeriveReport rep;
    ConstraintSystem sys = build_theorem1_system();
    sys.equalities = opts.equalities;
    FmResult fm = fm_eliminate(sys, opts.elimination_order, opts.dump_steps);
    rep.max_intermediate_rows = fm.max_intermediate_rows;

    EqualitySystem eqs(opts.equalities);
    std::map<std::string, int> derived_by_key;
    for (auto& r : fm.rows) {
        if (is_plain_nonneg_row(r)) continue;  // R >= 0 rows, stated separately
        LinearInfoInequality c = canonicalize(r, eqs);
        std::string k = c.key();
        if (derived_by_key.count(k)) continue;
        derived_by_key[k] = int(rep.derived.size());
        rep.derived.push_back(std::move(c));
    }
    for (auto t : theorem1_targets()) rep.targets.push_back(canonicalize(std::move(t), eqs));

    rep.target_match.assign(rep.targets.size(), -1);
    std::vector<bool> used(rep.derived.size(), false);
    for (std::size_t i = 0; i < rep.targets.size(); ++i) {
        auto it = derived_by_key.find(rep.targets[i].key());
        if (it != derived_by_key.end()) {
            rep.target_match[i] = it->second;
            used[it->second] = true;
        }
    }
    for (std::size_t i = 0; i < rep.derived.size(); ++i)
        if (!used[i]) rep.surplus.push_back(int(i));

    // Surplus classification. Stage 1/2: canonical duplicates were already
    // merged; coefficient dominance relative to a matched target.
    rep.surplus_status.assign(rep.surplus.size(), SurplusStatus::Unresolved);
    for (std::size_t k = 0; k < rep.surplus.size(); ++k) {
        const auto& s = rep.derived[rep.surplus[k]];
        for (const auto& t : rep.targets) {
            if (s.rhs == t.rhs && rate_dominated(s, t)) {
                rep.surplus_status[k] = SurplusStatus::DominatedByTarget;
                break;
            }
        }
    }

    // Stage 3: numeric redundancy at entropic points drawn from the
    // factorization-respecting sampler.
    std::vector<SubsetMask> needed;
    auto collect = [&](const LinearInfoInequality& r) {
        for (const auto& [m, c] : r.rhs.coeffs) needed.push_back(m);
    };
    for (const auto& r : rep.derived) collect(r);
    for (const auto& t : rep.targets) collect(t);

    std::mt19937_64 rng(opts.seed);
    bool all_ok = true;
    std::vector<bool> numeric_ok(rep.surplus.size(), true);
    for (int sample = 0; sample < opts.numeric_samples; ++sample) {
        auto h = sample_entropies(rng, needed);
        std::vector<IneqRow> target_rows;
        for (const auto& t : rep.targets)
            target_rows.push_back({to_double(t.rate[kR0]), to_double(t.rate[kR1]),
                                   to_double(t.rate[kR2]), t.rhs.evaluate(h)});
        auto verts = polytope_vertices(target_rows, 3);
        for (std::size_t i = 0; i < rep.derived.size(); ++i) {
            const auto& d = rep.derived[i];
            double rhs = d.rhs.evaluate(h);
            double a0 = to_double(d.rate[kR0]), a1 = to_double(d.rate[kR1]),
                   a2 = to_double(d.rate[kR2]);
            for (const auto& v : verts)
                if (a0 * v[0] + a1 * v[1] + a2 * v[2] > rhs + 1e-9) {
                    all_ok = false;
                    for (std::size_t k = 0; k < rep.surplus.size(); ++k)
                        if (rep.surplus[k] == int(i)) numeric_ok[k] = false;
                }
        }
    }
    rep.numeric_crosscheck_ok = all_ok;
    for (std::size_t k = 0; k < rep.surplus.size(); ++k)
        if (rep.surplus_status[k] == SurplusStatus::Unresolved && numeric_ok[k])
            rep.surplus_status[k] = SurplusStatus::NumericallyRedundant;

    bool targets_ok = std::all_of(rep.target_match.begin(), rep.target_match.end(),
                                  [](int m) { return m >= 0; });
    bool surplus_ok = std::all_of(rep.surplus_status.begin(), rep.surplus_status.end(),
                                  [](SurplusStatus s) { return s != SurplusStatus::Unresolved; });
    rep.pass = targets_ok && surplus_ok && rep.numeric_crosscheck_ok;
    return rep;
}

std::string DeriveReport::summary() const {
    std::ostringstream os;
    int matched = 0;
    for (int m : target_match)
        if (m >= 0) ++matched;
    os << (pass ? "PASS" : "FAIL") << ": matched " << matched << "/" << targets.size()
       << " target inequalities";
    int dominated = 0, numeric = 0, unresolved = 0;
    for (auto s : surplus_status) {
        if (s == SurplusStatus::DominatedByTarget) ++dominated;
        if (s == SurplusStatus::NumericallyRedundant) ++numeric;
        if (s == SurplusStatus::Unresolved) ++unresolved;
    }
    os << "; surplus rows: " << surplus.size() << " (" << dominated << " dominated, " << numeric
       << " numerically redundant, " << unresolved << " unresolved)";
    os << "; peak system size " << max_intermediate_rows << " rows\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        os << (target_match[i] >= 0 ? "  [ok]      " : "  [MISSING] ") << targets[i].label << ": "
           << targets[i].to_string() << "\n";
    }
    for (std::size_t k = 0; k < surplus.size(); ++k) {
        const char* tag = surplus_status[k] == SurplusStatus::DominatedByTarget
                              ? "dominated"
                              : surplus_status[k] == SurplusStatus::NumericallyRedundant
                                    ? "numerically redundant"
                                    : "UNRESOLVED";
        os << "  [surplus: " << tag << "] " << derived[surplus[k]].to_string() << "\n";
    }
    return os.str();
}

}  // namespace brc::info
