#pragma once

#include <array>
#include <vector>

#include "brc/rational.hpp"

namespace brc {

// A rate vector (R0, R1[, R2]) in bits per channel use. 2-D points keep r[2] = 0.
using RatePoint = std::array<double, 3>;

struct Halfspace {
    std::array<double, 3> normal{};  // unit length
    double offset = 0;               // normal . R <= offset
};

// Convex, downward-closed achievable-rate region. Stored as hull vertices plus
// the facet halfspaces; downward closure toward the origin is built in.
struct RateRegion {
    int dim = 2;
    std::vector<RatePoint> vertices;
    std::vector<Halfspace> halfspaces;
};

// Convex downward-closed hull of the given achieved points (plus their
// axis projections and the origin, i.e. time sharing with silence).
RateRegion hull_of(const std::vector<RatePoint>& points, int dim);

bool region_contains(const RateRegion& region, const RatePoint& p, double tol = 1e-9);

struct InclusionResult {
    bool included = true;
    RatePoint worst_point{};  // inner vertex with the largest violation
    double worst_margin = 0;  // max over halfspaces of (normal.p - offset); <= tol when included
};

// True iff every vertex of `inner` lies in `outer` within tol.
InclusionResult region_includes(const RateRegion& outer, const RateRegion& inner,
                                double tol = 1e-9);

// Support function max direction . R over the region (direction >= 0, not all zero).
double region_support(const RateRegion& region, const RatePoint& direction);

// Keeps only coordinate-wise maximal points (sufficient for a downward-closed hull).
std::vector<RatePoint> pareto_prune(std::vector<RatePoint> points, int dim);

// Inequality a.R <= b as {a0, a1, a2, b}.
using IneqRow = std::array<double, 4>;

// Vertices of the bounded polytope {R >= 0} ∩ {rows}, by exhaustive basis
// enumeration. Intended for the small systems produced by region formulas.
std::vector<RatePoint> polytope_vertices(const std::vector<IneqRow>& rows, int dim);

}  // namespace brc
