#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "brc/channel.hpp"
#include "brc/pmf.hpp"
#include "brc/region.hpp"

namespace brc {

// Search specification for the auxiliary-variable distributions a region
// formula is optimized over. Cardinalities default to binary; `budget` is the
// number of sampled factorized distributions.
struct AuxSpec {
    int card_v0 = 2;
    int card_u0 = 2;
    int card_u1 = 2;
    int card_u2 = 2;
    int card_u3 = 2;
    int card_u4 = 2;
    int budget = 48;
    int refine_rounds = 1;  // coordinate-refinement passes per sweep direction
    std::uint64_t seed = 0xB12C;
    // Additional input-side joints folded into the search. Used by the outer
    // bound so it covers the witnesses an inner bound's own search produced.
    std::vector<PmfD> imported;

    void validate() const;
};

using NamedTerms = std::vector<std::pair<std::string, double>>;

struct WitnessRecord {
    RatePoint vertex{};     // region vertex certified by this record
    RatePoint achieved{};   // witness polytope point dominating the vertex
    int sample_index = -1;  // -1: refinement product, -2: imported joint
    PmfD joint;             // full joint over auxiliaries, inputs and outputs
    NamedTerms info_terms;  // evaluated information terms at the witness
};

struct RegionEvalReport {
    RateRegion region;
    std::vector<WitnessRecord> witnesses;  // parallel to region.vertices
    // Set for the sampled outer bound: the true bound is a supremum over all
    // distributions, so the sampled region under-approximates it.
    bool under_approximates_outer = false;
    std::vector<std::string> warnings;
};

// Constraint rows (rate coefficients and clamped right-hand sides) of each
// region formula evaluated at a full joint. Exposed so tests can replay a
// stored witness and reproduce its vertex.
std::vector<IneqRow> theorem1_rows(const PmfD& joint, NamedTerms* terms = nullptr);
std::vector<IneqRow> marton_rows(const PmfD& joint, NamedTerms* terms = nullptr);
std::vector<IneqRow> corollary2_rows(const PmfD& joint, NamedTerms* terms = nullptr);
std::vector<IneqRow> theorem3_rows(const PmfD& joint, NamedTerms* terms = nullptr);
std::vector<IneqRow> conjecture1_rows(const PmfD& joint, NamedTerms* terms = nullptr);
std::vector<IneqRow> theorem4_rows(const PmfD& joint, NamedTerms* terms = nullptr);

RegionEvalReport eval_theorem1(const BrcChannel& ch, const AuxSpec& spec);
RegionEvalReport eval_marton(const BroadcastChannel& ch, const AuxSpec& spec);
RegionEvalReport eval_corollary2(const BrcCrChannel& ch, const AuxSpec& spec);
RegionEvalReport eval_theorem3_upper(const BrcCrChannel& ch, const AuxSpec& spec);
RegionEvalReport eval_conjecture1(const BrcCrChannel& ch, const AuxSpec& spec);
RegionEvalReport eval_theorem4(const BrcCrChannel& ch, const AuxSpec& spec);

// Runs the theorem-1 machinery with a substitution baked into the sampler:
// Marton mode degenerates (V0, X1, X2, U3, U4) and lets the relays observe the
// destination outputs; the common-relay mode ties the relay inputs, duplicates
// the relay observation and sends all private information over the direct link.
enum class SpecializeMode { Marton, SemiDegradedCr };
RegionEvalReport specialize_theorem1(const BroadcastChannel& bc, SpecializeMode mode,
                                     const AuxSpec& spec);
RegionEvalReport specialize_theorem1(const BrcCrChannel& ch, SpecializeMode mode,
                                     const AuxSpec& spec);

// The fixed set of ~26 nonnegative sweep directions used for refinement.
std::vector<RatePoint> sweep_directions(int dim);

// Merges two variables of a joint into a single product-alphabet variable.
PmfD merge_vars(const PmfD& p, const std::string& a, const std::string& b,
                const std::string& merged);

}  // namespace brc
