#include "brc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "brc/parallel.hpp"

namespace brc {

void GaussianBrcParams::validate() const {
    for (double v : {P, P1, N1, N2, N1t})
        if (!(v > 0.0)) throw std::invalid_argument("gaussian params: all fields must be > 0");
}

SweepSpec SweepSpec::uniform(int points_per_axis) {
    if (points_per_axis < 2)
        throw std::invalid_argument("sweep: need at least 2 points per axis");
    std::vector<double> g(static_cast<std::size_t>(points_per_axis));
    for (int i = 0; i < points_per_axis; ++i) g[std::size_t(i)] = double(i) / (points_per_axis - 1);
    g.front() = 0.0;
    g.back() = 1.0;
    return SweepSpec{g, g, g};
}

void SweepSpec::validate() const {
    for (const auto* g : {&alpha, &beta, &gamma}) {
        if (g->size() < 2 || g->front() != 0.0 || g->back() != 1.0 ||
            !std::is_sorted(g->begin(), g->end()))
            throw std::invalid_argument("sweep: each grid must be sorted in [0,1] with endpoints");
        for (double v : *g)
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("sweep: grid values must lie in [0,1]");
    }
}

double cap(double x) {
    if (x < 0.0) throw std::domain_error("cap: negative signal-to-noise ratio");
    return 0.5 * std::log2(1.0 + x);
}

GaussianCell gaussian_cell(const GaussianBrcParams& p, double alpha, double beta, double gamma) {
    p.validate();
    double s = p.P + p.P1 + 2.0 * std::sqrt((1.0 - beta) * p.P * p.P1);
    GaussianCell c;
    c.alpha = alpha;
    c.beta = beta;
    c.gamma = gamma;
    c.r0_bound = cap(alpha * s / ((1.0 - alpha) * s + p.N2));
    c.r1_cooperative = cap((1.0 - alpha) * s / p.N1);
    c.r1_relay = cap(beta * gamma * p.P / p.N1t);
    c.sum_bound = cap(beta * p.P / p.N1t);
    return c;
}

std::vector<IneqRow> GaussianCell::rows() const {
    return {
        {1, 0, 0, r0_bound},
        {0, 1, 0, r1_cooperative},
        {0, 1, 0, r1_relay},
        {1, 1, 0, sum_bound},
    };
}

namespace {

struct CellPoint {
    RatePoint pt{};
    std::size_t cell_index = 0;
    double r0_bound = 0;  // dominance tie-break, largest wins
};

// 2-D Pareto prune keeping, among coinciding points, the cell with the largest
// unclipped common-rate bound (then the smallest grid index).
void prune_frontier(std::vector<CellPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const CellPoint& a, const CellPoint& b) {
        if (a.pt[0] != b.pt[0]) return a.pt[0] > b.pt[0];
        if (a.pt[1] != b.pt[1]) return a.pt[1] > b.pt[1];
        if (a.r0_bound != b.r0_bound) return a.r0_bound > b.r0_bound;
        return a.cell_index < b.cell_index;
    });
    std::vector<CellPoint> kept;
    double best_r1 = -1.0;
    for (const auto& c : pts) {
        if (c.pt[1] <= best_r1) continue;
        best_r1 = c.pt[1];
        kept.push_back(c);
    }
    pts = std::move(kept);
}

}  // namespace

GaussianRegionReport gaussian_region(const GaussianBrcParams& params, const SweepSpec& sweep) {
    params.validate();
    sweep.validate();
    const std::size_t nb = sweep.beta.size(), ng = sweep.gamma.size();

    // Cells are independent; one slot per alpha slice, merged in grid order.
    std::vector<std::vector<CellPoint>> slices(sweep.alpha.size());
    parallel_for(sweep.alpha.size(), [&](std::size_t ia) {
        std::vector<CellPoint>& out = slices[ia];
        for (std::size_t ib = 0; ib < nb; ++ib)
            for (std::size_t ig = 0; ig < ng; ++ig) {
                GaussianCell c =
                    gaussian_cell(params, sweep.alpha[ia], sweep.beta[ib], sweep.gamma[ig]);
                std::size_t idx = (ia * nb + ib) * ng + ig;
                for (const auto& v : polytope_vertices(c.rows(), 2))
                    out.push_back({v, idx, c.r0_bound});
            }
        prune_frontier(out);
    });
    std::vector<CellPoint> frontier;
    for (const auto& s : slices) frontier.insert(frontier.end(), s.begin(), s.end());
    prune_frontier(frontier);

    GaussianRegionReport rep;
    std::vector<RatePoint> pts;
    pts.reserve(frontier.size());
    for (const auto& c : frontier) pts.push_back(c.pt);
    rep.region = hull_of(pts, 2);

    auto cell_at = [&](std::size_t idx) {
        std::size_t ig = idx % ng, ib = (idx / ng) % nb, ia = idx / (ng * nb);
        return gaussian_cell(params, sweep.alpha[ia], sweep.beta[ib], sweep.gamma[ig]);
    };
    for (const auto& v : rep.region.vertices) {
        const CellPoint* best = nullptr;
        for (const auto& c : frontier) {
            if (c.pt[0] < v[0] - 1e-9 || c.pt[1] < v[1] - 1e-9) continue;
            if (!best || c.r0_bound > best->r0_bound ||
                (c.r0_bound == best->r0_bound && c.cell_index < best->cell_index))
                best = &c;
        }
        if (!best) continue;
        GaussianWitness w;
        w.vertex = v;
        w.achieved = best->pt;
        w.cell = cell_at(best->cell_index);
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

GaussianExtremes gaussian_extremes(const GaussianBrcParams& params, const SweepSpec& sweep) {
    params.validate();
    sweep.validate();
    GaussianExtremes ex;
    for (double a : sweep.alpha)
        for (double b : sweep.beta)
            for (double g : sweep.gamma) {
                GaussianCell c = gaussian_cell(params, a, b, g);
                double r0 = std::min(c.r0_bound, c.sum_bound);
                double r1 = std::min({c.r1_cooperative, c.r1_relay, c.sum_bound});
                if (r0 > ex.r0_only) {
                    ex.r0_only = r0;
                    ex.r0_cell = c;
                }
                if (r1 > ex.r1_only) {
                    ex.r1_only = r1;
                    ex.r1_cell = c;
                }
            }
    return ex;
}

}  // namespace brc
