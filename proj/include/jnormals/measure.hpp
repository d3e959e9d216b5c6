#pragma once

#include <optional>
#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/discrete_normal.hpp"
#include "jnormals/jordan.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

struct MeasureAtom {
    double t = 0.0;   // position on [0, L_j]
    Vec jump;         // tangent jump vector of the lifted path
    double mass = 0.0;  // turning angle at the junction
};

struct DensitySample {
    double t = 0.0;    // transition-function parameter
    double s = 0.0;    // curve parameter
    Vec density;       // d/ds of the normalized normal velocity
};

struct MeasureReport {
    std::vector<MeasureAtom> atoms;
    double total_variation = 0.0;  // length + sum of atom masses
    double length = 0.0;           // arc-interior contribution
    std::vector<DensitySample> ac_density_samples;
};

// Jump measure of the arc-length derivative of a discrete normal: one atom
// per junction with mass equal to the turning angle; the arc interiors
// contribute their length to the total variation.
MeasureReport polygonal_jump_measure(const DiscreteNormal& dn, bool closed);

// Absolutely continuous density for smoothly turning curves, sampled by
// central differences of the analytic unit vector dot n_j / ||dot n_j||.
MeasureReport smooth_density(CurvePtr c, int j, int grid = 257);

struct TangentialCheck {
    double max_error = 0.0;      // |P_tan density - sgn(tau) k_{N-1} n_{N-2}| sup
    double torsion_sign = 0.0;   // sign of the Hodge-oriented last curvature
    int samples = 0;
};

// Tangential component of the last-normal derivative measure against the
// closed-form sgn(tau) k_{N-1} n_{N-2}, on curves in R^3.
TangentialCheck tangential_component_check(CurvePtr c, int grid = 201);

struct MeasureBins {
    int n = 0;
    std::vector<double> discrete_mass;  // |D gamma'| of the discrete path per bin
    std::vector<double> smooth_mass;    // integral of the smooth density norm per bin
    double max_discrepancy = 0.0;       // max bin difference
    double total_mass = 0.0;            // smooth total
};

// Bins the discrete derivative measure over a uniform t-partition and
// compares against the smooth density, level by level.
std::vector<MeasureBins> convergence_of_measures(CurvePtr c, int j,
                                                 const std::vector<int>& schedule,
                                                 int bins = 64);

}  // namespace jnormals
