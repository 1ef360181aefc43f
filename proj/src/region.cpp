#include "brc/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace brc {

namespace {

using R3 = std::array<Rational, 3>;

R3 to_rat(const RatePoint& p) {
    return {rational_from_double(p[0]), rational_from_double(p[1]), rational_from_double(p[2])};
}

int sign(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// Orientation of d relative to the plane through a, b, c (exact).
int orient3d(const R3& a, const R3& b, const R3& c, const R3& d) {
    Rational ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    Rational vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
    Rational wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
    Rational det = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
    return sign(det);
}

int cross2d(const R3& a, const R3& b, const R3& c) {
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

void dedupe(std::vector<RatePoint>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

Halfspace make_halfspace(double nx, double ny, double nz, double offset) {
    double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    return Halfspace{{nx / len, ny / len, nz / len}, offset / len};
}

struct Face {
    int a, b, c;
    bool alive = true;
};

// Incremental 3-D convex hull with exact rational predicates. The input is
// guaranteed full-dimensional by the caller (origin plus one point per axis).
std::vector<Face> hull3d(const std::vector<RatePoint>& pts, const std::vector<R3>& rp) {
    std::size_t n = pts.size();
    // Initial tetrahedron: greedily pick four non-coplanar points.
    std::size_t i0 = 0, i1 = 1;
    while (i1 < n && rp[i1] == rp[i0]) ++i1;
    if (i1 >= n) throw std::logic_error("hull3d: degenerate input");
    std::size_t i2 = i1 + 1;
    auto collinear = [&](std::size_t k) {
        return cross2d(rp[i0], rp[i1], rp[k]) == 0 &&
               sign((rp[i1][0] - rp[i0][0]) * (rp[k][2] - rp[i0][2]) -
                    (rp[i1][2] - rp[i0][2]) * (rp[k][0] - rp[i0][0])) == 0 &&
               sign((rp[i1][1] - rp[i0][1]) * (rp[k][2] - rp[i0][2]) -
                    (rp[i1][2] - rp[i0][2]) * (rp[k][1] - rp[i0][1])) == 0;
    };
    while (i2 < n && collinear(i2)) ++i2;
    if (i2 >= n) throw std::logic_error("hull3d: collinear input");
    std::size_t i3 = 0;
    while (i3 < n && orient3d(rp[i0], rp[i1], rp[i2], rp[i3]) == 0) ++i3;
    if (i3 >= n) throw std::logic_error("hull3d: coplanar input");

    std::vector<Face> faces;
    auto add_face = [&](int a, int b, int c, const R3& inside) {
        // Orient so the inside reference point is on the non-positive side.
        if (orient3d(rp[a], rp[b], rp[c], inside) > 0) std::swap(b, c);
        faces.push_back(Face{a, b, c});
    };
    {
        int a = int(i0), b = int(i1), c = int(i2), d = int(i3);
        add_face(a, b, c, rp[d]);
        add_face(a, b, d, rp[c]);
        add_face(a, c, d, rp[b]);
        add_face(b, c, d, rp[a]);
    }

    for (std::size_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<int> visible;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive) continue;
            if (orient3d(rp[faces[f].a], rp[faces[f].b], rp[faces[f].c], rp[p]) > 0)
                visible.push_back(int(f));
        }
        if (visible.empty()) continue;
        std::map<std::pair<int, int>, int> edge_count;  // directed edges of visible faces
        for (int f : visible) {
            const Face& fc = faces[f];
            edge_count[{fc.a, fc.b}]++;
            edge_count[{fc.b, fc.c}]++;
            edge_count[{fc.c, fc.a}]++;
        }
        for (int f : visible) faces[f].alive = false;
        // Horizon: directed edge (u,v) of a visible face whose reverse edge is
        // not an edge of any visible face.
        for (const auto& [edge, cnt] : edge_count) {
            (void)cnt;
            if (edge_count.count({edge.second, edge.first})) continue;
            faces.push_back(Face{edge.first, edge.second, int(p)});
        }
    }
    faces.erase(std::remove_if(faces.begin(), faces.end(), [](const Face& f) { return !f.alive; }),
                faces.end());
    return faces;
}

}  // namespace

std::vector<RatePoint> pareto_prune(std::vector<RatePoint> points, int dim) {
    dedupe(points);
    auto dominates = [dim](const RatePoint& a, const RatePoint& b) {
        for (int k = 0; k < dim; ++k)
            if (a[k] < b[k]) return false;
        return true;
    };
    std::vector<RatePoint> front;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : front)
            if (dominates(q, p)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        front.erase(std::remove_if(front.begin(), front.end(),
                                   [&](const RatePoint& q) { return dominates(p, q); }),
                    front.end());
        front.push_back(p);
    }
    return front;
}

RateRegion hull_of(const std::vector<RatePoint>& points, int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("hull_of: dimension must be 2 or 3");
    if (points.empty()) throw std::invalid_argument("hull_of: empty point set");

    std::vector<RatePoint> pts;
    pts.reserve(points.size());
    for (RatePoint p : points) {
        for (int k = 0; k < 3; ++k) {
            if (k >= dim && p[k] != 0.0)
                throw std::invalid_argument("hull_of: point dimension mismatch");
            if (p[k] < 0) {
                if (p[k] < -1e-9) throw std::invalid_argument("hull_of: negative rate coordinate");
                p[k] = 0;
            }
        }
        pts.push_back(p);
    }
    pts = pareto_prune(std::move(pts), dim);

    // Downward closure: every coordinate-zeroed shadow, including the origin.
    std::vector<RatePoint> aug;
    for (const auto& p : pts)
        for (int mask = 0; mask < (1 << dim); ++mask) {
            RatePoint q = p;
            for (int k = 0; k < dim; ++k)
                if (mask & (1 << k)) q[k] = 0;
            aug.push_back(q);
        }
    dedupe(aug);

    // Coordinates that are identically zero reduce the dimension; the reduced
    // set is always full-dimensional thanks to the axis shadows.
    std::vector<int> active;
    for (int k = 0; k < dim; ++k) {
        bool nonzero = false;
        for (const auto& p : aug)
            if (p[k] > 0) nonzero = true;
        if (nonzero) active.push_back(k);
    }

    RateRegion region;
    region.dim = dim;
    auto add_zero_coord_planes = [&] {
        for (int k = 0; k < dim; ++k) {
            bool is_active = std::find(active.begin(), active.end(), k) != active.end();
            if (!is_active) {
                Halfspace h;
                h.normal[k] = 1;
                h.offset = 0;
                region.halfspaces.push_back(h);
            }
        }
    };

    if (active.empty()) {
        region.vertices = {RatePoint{0, 0, 0}};
        add_zero_coord_planes();
        return region;
    }

    if (active.size() == 1) {
        int k = active[0];
        double top = 0;
        for (const auto& p : aug) top = std::max(top, p[k]);
        RatePoint v{};
        v[k] = top;
        region.vertices = {RatePoint{0, 0, 0}, v};
        Halfspace hi;
        hi.normal[k] = 1;
        hi.offset = top;
        Halfspace lo;
        lo.normal[k] = -1;
        region.halfspaces = {hi, lo};
        add_zero_coord_planes();
        return region;
    }

    if (active.size() == 2) {
        int kx = active[0], ky = active[1];
        // Monotone chain on the two active coordinates, exact predicates.
        std::vector<RatePoint> s = aug;
        std::sort(s.begin(), s.end(), [&](const RatePoint& a, const RatePoint& b) {
            return a[kx] != b[kx] ? a[kx] < b[kx] : a[ky] < b[ky];
        });
        std::vector<R3> rs(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            rs[i] = {rational_from_double(s[i][kx]), rational_from_double(s[i][ky]), Rational(0)};
        auto build = [&](bool upper) {
            std::vector<int> chain;
            for (std::size_t ii = 0; ii < s.size(); ++ii) {
                std::size_t i = upper ? s.size() - 1 - ii : ii;
                while (chain.size() >= 2 &&
                       cross2d(rs[chain[chain.size() - 2]], rs[chain.back()], rs[i]) <= 0)
                    chain.pop_back();
                chain.push_back(int(i));
            }
            return chain;
        };
        std::vector<int> lower = build(false), upper = build(true);
        std::vector<int> hull = lower;
        hull.insert(hull.end(), upper.begin() + 1, upper.end() - 1);

        for (int i : hull) region.vertices.push_back(s[i]);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const R3& a = rs[hull[i]];
            const R3& b = rs[hull[(i + 1) % hull.size()]];
            // Outward normal of CCW edge a -> b.
            Rational nx = b[1] - a[1], ny = a[0] - b[0];
            Rational off = nx * a[0] + ny * a[1];
            Halfspace h{};
            h.normal[kx] = to_double(nx);
            h.normal[ky] = to_double(ny);
            h.offset = to_double(off);
            double len = std::hypot(h.normal[kx], h.normal[ky]);
            h.normal[kx] /= len;
            h.normal[ky] /= len;
            h.offset /= len;
            region.halfspaces.push_back(h);
        }
        add_zero_coord_planes();
        return region;
    }

    // Full 3-D case.
    std::vector<R3> rp(aug.size());
    for (std::size_t i = 0; i < aug.size(); ++i) rp[i] = to_rat(aug[i]);
    std::vector<Face> faces = hull3d(aug, rp);

    std::vector<bool> used(aug.size(), false);
    std::map<std::array<double, 4>, Halfspace> planes;
    for (const Face& f : faces) {
        used[f.a] = used[f.b] = used[f.c] = true;
        const R3 &a = rp[f.a], &b = rp[f.b], &c = rp[f.c];
        Rational nx = (b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]);
        Rational ny = (b[2] - a[2]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[2] - a[2]);
        Rational nz = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        Rational off = nx * a[0] + ny * a[1] + nz * a[2];
        // Canonical scale for dedupe: divide by the max-abs component.
        Rational scale = abs(nx);
        if (abs(ny) > scale) scale = abs(ny);
        if (abs(nz) > scale) scale = abs(nz);
        if (scale == 0) continue;  // sliver, skip
        std::array<double, 4> key = {to_double(nx / scale), to_double(ny / scale),
                                     to_double(nz / scale), to_double(off / scale)};
        if (!planes.count(key))
            planes[key] =
                make_halfspace(to_double(nx), to_double(ny), to_double(nz), to_double(off));
    }
    for (std::size_t i = 0; i < aug.size(); ++i)
        if (used[i]) region.vertices.push_back(aug[i]);
    for (const auto& [key, h] : planes) {
        (void)key;
        region.halfspaces.push_back(h);
    }
    return region;
}

bool region_contains(const RateRegion& region, const RatePoint& p, double tol) {
    for (const auto& h : region.halfspaces) {
        double slack = h.normal[0] * p[0] + h.normal[1] * p[1] + h.normal[2] * p[2] - h.offset;
        if (slack > tol) return false;
    }
    return true;
}

InclusionResult region_includes(const RateRegion& outer, const RateRegion& inner, double tol) {
    if (outer.dim != inner.dim) throw std::invalid_argument("region_includes: dimension mismatch");
    InclusionResult res;
    res.worst_margin = -std::numeric_limits<double>::infinity();
    for (const auto& v : inner.vertices) {
        double margin = -std::numeric_limits<double>::infinity();
        for (const auto& h : outer.halfspaces)
            margin = std::max(margin,
                              h.normal[0] * v[0] + h.normal[1] * v[1] + h.normal[2] * v[2] -
                                  h.offset);
        if (margin > res.worst_margin) {
            res.worst_margin = margin;
            res.worst_point = v;
        }
    }
    if (inner.vertices.empty()) res.worst_margin = 0;
    res.included = res.worst_margin <= tol;
    return res;
}

std::vector<RatePoint> polytope_vertices(const std::vector<IneqRow>& rows, int dim) {
    std::vector<IneqRow> all = rows;
    for (int k = 0; k < dim; ++k) {
        IneqRow r{0, 0, 0, 0};
        r[k] = -1;
        all.push_back(r);
    }
    std::vector<RatePoint> verts;
    std::size_t n = all.size();
    std::vector<std::size_t> pick(dim);
    auto try_basis = [&]() {
        // Solve the dim x dim system with partial pivoting.
        double m[3][4] = {};
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) m[i][j] = all[pick[i]][j];
            m[i][dim] = all[pick[i]][3];
        }
        for (int col = 0; col < dim; ++col) {
            int best = col;
            for (int r = col + 1; r < dim; ++r)
                if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
            if (std::abs(m[best][col]) < 1e-12) return;
            std::swap(m[col], m[best]);
            for (int r = 0; r < dim; ++r) {
                if (r == col) continue;
                double f = m[r][col] / m[col][col];
                for (int j = col; j <= dim; ++j) m[r][j] -= f * m[col][j];
            }
        }
        RatePoint p{0, 0, 0};
        for (int i = 0; i < dim; ++i) p[i] = m[i][dim] / m[i][i];
        for (int k = 0; k < dim; ++k)
            if (p[k] < 0) {
                if (p[k] < -1e-9) return;
                p[k] = 0;
            }
        for (const auto& r : all)
            if (r[0] * p[0] + r[1] * p[1] + r[2] * p[2] > r[3] + 1e-9) return;
        verts.push_back(p);
    };
    // All dim-subsets of constraints.
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int depth) {
        if (depth == dim) {
            try_basis();
            return;
        }
        for (std::size_t i = start; i + (dim - depth - 1) < n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    dedupe(verts);
    return verts;
}

double region_support(const RateRegion& region, const RatePoint& direction) {
    bool any = false;
    for (int k = 0; k < 3; ++k) {
        if (direction[k] < 0) throw std::invalid_argument("region_support: direction must be >= 0");
        if (direction[k] > 0) any = true;
    }
    if (!any) throw std::invalid_argument("region_support: zero direction");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : region.vertices)
        best = std::max(best, direction[0] * v[0] + direction[1] * v[1] + direction[2] * v[2]);
    return best;
}

}  // namespace brc
