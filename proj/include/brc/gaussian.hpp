#pragma once

#include <vector>

#include "brc/region.hpp"

namespace brc {

// Powers and noise variances of the scalar Gaussian model with a common relay:
// Y1 = X + X1 + N(0, N1), Y2 = X + X1 + N(0, N2), Z1 = X + N(0, N1t).
struct GaussianBrcParams {
    double P = 1.0;    // source power
    double P1 = 1.0;   // relay power
    double N1 = 1.0;   // first destination noise variance
    double N2 = 1.0;   // second destination noise variance
    double N1t = 1.0;  // relay observation noise variance

    void validate() const;
};

// Endpoint-inclusive sorted grids over the three power-split parameters.
struct SweepSpec {
    std::vector<double> alpha, beta, gamma;

    static SweepSpec uniform(int points_per_axis);
    void validate() const;
};

// C(x) = 1/2 log2(1 + x) in bits. Throws on a negative argument.
double cap(double x);

// The four rate bounds of one (alpha, beta, gamma) grid cell, kept separately
// so a witness can show a bound before the others clip it.
struct GaussianCell {
    double alpha = 0, beta = 0, gamma = 0;
    double r0_bound = 0;        // C(alpha*S / ((1-alpha)*S + N2)), S = P+P1+2*sqrt((1-beta)*P*P1)
    double r1_cooperative = 0;  // C((1-alpha)*S / N1)
    double r1_relay = 0;        // C(beta*gamma*P / N1t)
    double sum_bound = 0;       // C(beta*P / N1t)

    std::vector<IneqRow> rows() const;
};

GaussianCell gaussian_cell(const GaussianBrcParams& params, double alpha, double beta,
                           double gamma);

struct GaussianWitness {
    RatePoint vertex{};    // region vertex certified by this cell
    RatePoint achieved{};  // point of the cell polytope dominating the vertex
    GaussianCell cell;
};

struct GaussianRegionReport {
    RateRegion region;                      // 2-D, downward-closed hull of all cells
    std::vector<GaussianWitness> witnesses;  // parallel to region.vertices
};

GaussianRegionReport gaussian_region(const GaussianBrcParams& params, const SweepSpec& sweep);

// Largest single-user rates over the sweep, used as acceptance anchors.
struct GaussianExtremes {
    double r0_only = 0;
    GaussianCell r0_cell;
    double r1_only = 0;
    GaussianCell r1_cell;
};

GaussianExtremes gaussian_extremes(const GaussianBrcParams& params, const SweepSpec& sweep);

}  // namespace brc
