#pragma once

#include <string>
#include <variant>
#include <vector>

#include "brc/bounds.hpp"
#include "brc/channel.hpp"
#include "brc/pmf.hpp"
#include "brc/region.hpp"

namespace brc::io {

// JSON PMF: {"variables":[{"name":"X","size":2},...],"probs":[...]} with the
// table row-major, last-listed variable varying fastest. Probabilities may be
// numbers or "p/q" strings.
Pmf load_pmf_json(const std::string& path);
void save_pmf_json(const Pmf& p, const std::string& path);

// Channel JSON: {"inputs":[{"name","size"},...],"outputs":[...],"rows":
// [{"given":[...],"pmf":[...]},...]}, one row per input tuple in row-major
// input order. The input count selects the channel shape: 1 input (X) is a
// plain broadcast channel, 2 (X, X1) the common-relay model, 3 (X, X1, X2)
// the two-relay model.
using AnyChannel = std::variant<BroadcastChannel, BrcCrChannel, BrcChannel>;
AnyChannel load_channel_json(const std::string& path);
void save_channel_json(const BroadcastChannel& ch, const std::string& path);
void save_channel_json(const BrcCrChannel& ch, const std::string& path);
void save_channel_json(const BrcChannel& ch, const std::string& path);

// Region CSV: one hull vertex per line, "R0,R1" or "R0,R1,R2". Writing is
// byte-stable for identical regions.
std::string region_to_csv(const RateRegion& region);
void save_region_csv(const RateRegion& region, const std::string& path);
RateRegion load_region_csv(const std::string& path);

// Region JSON adds the facet halfspaces to the vertex list.
std::string region_to_json(const RateRegion& region);

// SVG frontier plot, axes in bits. 3-D regions are drawn as the three
// coordinate-plane projections.
std::string region_to_svg(const RateRegion& region);
void save_region_svg(const RateRegion& region, const std::string& path);

// Aux-spec JSON; absent keys keep their defaults. Keys: card_v0, card_u0,
// card_u1, card_u2, card_u3, card_u4, budget, refine_rounds, seed.
AuxSpec load_aux_spec_json(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace brc::io
