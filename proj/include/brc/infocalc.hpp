#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brc/rational.hpp"

namespace brc::info {

// Ground set of random-variable symbols, fixed order. Subsets are bitmasks.
enum GroundVar : int {
    kV0 = 0,
    kU0,
    kU1,
    kU2,
    kU3,
    kU4,
    kX1,
    kX2,
    kY1,
    kY2,
    kZ1,
    kZ2,
    kGroundCount
};

using SubsetMask = std::uint16_t;

constexpr SubsetMask mask_of(GroundVar v) { return SubsetMask(1u << v); }

template <typename... Vs>
constexpr SubsetMask subset(Vs... vs) {
    return SubsetMask((mask_of(vs) | ...));
}

std::string ground_var_name(GroundVar v);
std::string subset_name(SubsetMask m);  // e.g. "U0,V0"

// Linear form over joint entropies H(S), S a nonempty subset of the ground set.
// The coefficient keyed by the empty mask (0) acts as a plain constant term.
struct EntropyForm {
    std::map<SubsetMask, Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(SubsetMask m, const Rational& c);
    EntropyForm& operator+=(const EntropyForm& o);
    EntropyForm& operator-=(const EntropyForm& o);
    EntropyForm& operator*=(const Rational& c);
    friend EntropyForm operator+(EntropyForm a, const EntropyForm& b) { return a += b; }
    friend EntropyForm operator-(EntropyForm a, const EntropyForm& b) { return a -= b; }
    friend EntropyForm operator*(EntropyForm a, const Rational& c) { return a *= c; }
    bool operator==(const EntropyForm& o) const { return coeffs == o.coeffs; }

    // Evaluates the form given numeric entropies per subset (mask 0 -> 1.0).
    double evaluate(const std::map<SubsetMask, double>& entropies) const;
};

EntropyForm entropy_term(SubsetMask s);  // H(S)
EntropyForm constant_term(const Rational& c);
// I(A;B|C) = H(A|C)+H(B|C)-H(AB|C) in entropy coordinates; A,B disjoint, C
// disjoint from both (C may be empty).
EntropyForm info_term(SubsetMask a, SubsetMask b, SubsetMask c = 0);

std::string format_form(const EntropyForm& f);             // sum of H(S) terms
std::string format_form_as_info_terms(const EntropyForm& f);  // greedy I(.;.|.) notation

// Rate-side symbols of the code-construction constraint system.
enum RateSym : int {
    kR0 = 0,
    kR1,
    kR2,
    kS01,
    kS02,
    kS1,
    kS2,
    kS3,
    kS4,
    kT0,
    kT1,
    kT2,
    kT3,
    kT4,
    kRateCount
};

std::string rate_sym_name(RateSym s);

enum class Relation { Le, Eq };

// rate . x  (<= or ==)  rhs, with rhs a linear entropy form.
struct LinearInfoInequality {
    std::array<Rational, kRateCount> rate{};
    EntropyForm rhs;
    Relation rel = Relation::Le;
    std::string label;
    // Bitmask of source-row indices this row was combined from; lets the
    // elimination drop rows provably redundant by combination count.
    std::uint64_t history = 0;

    bool rate_is_zero() const;
    // Scales to coprime integer coefficients (deterministic; Eq rows get a
    // canonical sign). Throws if the row is entirely zero.
    void normalize();
    std::string key() const;  // canonical comparison key (ignores label)
    std::string to_string() const;
};

struct ConstraintSystem {
    std::vector<LinearInfoInequality> rows;
    std::vector<EntropyForm> equalities;  // entropy-coordinate forms == 0
};

// Equality list reduced to echelon form; pivots chosen as the lexicographically
// largest subset bitmask of each form.
class EqualitySystem {
public:
    EqualitySystem() = default;
    explicit EqualitySystem(const std::vector<EntropyForm>& forms);
    void reduce(EntropyForm& f) const;

private:
    std::vector<std::pair<SubsetMask, EntropyForm>> echelon_;
};

LinearInfoInequality canonicalize(LinearInfoInequality ineq, const EqualitySystem& eqs);

// The full coding constraint set for both users: message-recombination bin
// sizes, Marton binning, relay decoding and backward decoding, together with
// the rate recombination equalities, T >= S orderings and nonnegativity.
// Strict inequalities are relaxed to non-strict.
ConstraintSystem build_theorem1_system();

// The sixteen inner-bound inequalities (each min{} expanded into its linear
// alternatives) that the elimination must reproduce.
std::vector<LinearInfoInequality> theorem1_targets();

// Markov/factorization identities of the auxiliary-variable family, shipped as
// data (see data/equalities.json); used to quotient rows before comparison.
std::vector<EntropyForm> load_equalities(const std::string& path);
std::vector<EntropyForm> builtin_equalities();

struct FmResult {
    std::vector<LinearInfoInequality> rows;      // rows still mentioning rate symbols
    std::vector<EntropyForm> entropy_facts;      // byproduct rows 0 <= F
    std::size_t max_intermediate_rows = 0;
};

// Exact Fourier-Motzkin projection eliminating `vars` in order. Equality rows
// are used for substitution when they mention the variable being eliminated.
FmResult fm_eliminate(const ConstraintSystem& sys, const std::vector<RateSym>& vars,
                      std::vector<std::string>* dump_steps = nullptr);

std::vector<RateSym> default_elimination_order();

enum class SurplusStatus { DominatedByTarget, NumericallyRedundant, Unresolved };

struct DeriveOptions {
    std::vector<RateSym> elimination_order = default_elimination_order();
    std::vector<EntropyForm> equalities = builtin_equalities();
    int numeric_samples = 24;
    std::uint64_t seed = 0xB12C;
    std::vector<std::string>* dump_steps = nullptr;
};

struct DeriveReport {
    bool pass = false;
    std::vector<LinearInfoInequality> derived;  // canonical rows with rate part
    std::vector<LinearInfoInequality> targets;  // canonical targets
    std::vector<int> target_match;              // per target: index into derived, or -1
    std::vector<int> surplus;                   // derived indices matching no target
    std::vector<SurplusStatus> surplus_status;
    bool numeric_crosscheck_ok = false;
    std::size_t max_intermediate_rows = 0;
    std::string summary() const;
};

// Runs build_theorem1_system -> fm_eliminate -> canonicalize and compares with
// theorem1_targets. PASS requires every target matched and every surplus row
// shown redundant.
DeriveReport derive_and_compare(const DeriveOptions& opts = {});

}  // namespace brc::info
