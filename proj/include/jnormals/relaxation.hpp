#pragma once

#include <optional>
#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/discrete_normal.hpp"
#include "jnormals/jordan.hpp"
#include "jnormals/polyline.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

struct RelaxLevel {
    int n = 0;
    double modulus = 0.0;
    double mesh = 0.0;
    double length_j = 0.0;
    double tc_ambient_j = 0.0;
};

struct RelaxationRun {
    int j = 0;
    std::vector<RelaxLevel> levels;
    std::optional<double> extrapolated;  // Richardson estimate when Cauchy
    bool cauchy = false;
    double final_value() const { return levels.back().length_j; }
    double best_value() const { return extrapolated ? *extrapolated : final_value(); }
};

std::vector<int> default_schedule();  // {16, 32, ..., 4096}

// Length of the discrete j-th normal along uniform inscriptions with
// vanishing modulus. Coarse levels that are too flat for the pivot search are
// skipped; if every level fails, DegenerateCurve is thrown.
RelaxationRun estimate_Fj(CurvePtr c, int j, const std::vector<int>& schedule = default_schedule(),
                          int modulus_samples = 33);

struct F1TcLevel {
    int n = 0;
    double length_n1 = 0.0;
    double tc = 0.0;
    bool holds = false;
};

struct F1TcReport {
    std::vector<F1TcLevel> levels;
    bool all_hold = true;
};

// Level-by-level comparison of L([n_1](P_n)) against TC(P_n).
F1TcReport check_f1_tc_bound(CurvePtr c, const std::vector<int>& schedule = default_schedule());

// Constant-speed parameterization of the discrete j-th normal at the finest
// level, sampled on a uniform grid over [0, L_j].
struct WeakNormalPath {
    int j = 0;
    double total_length = 0.0;
    std::vector<ProjPoint> samples;  // grid points at t = k L_j / (grid-1)
};

WeakNormalPath weak_normal(CurvePtr c, int j, int n_final = 2048, int grid = 512);

struct SmoothComparison {
    double max_pointwise = 0.0;   // sup over the grid of projective distances
    double frechet_estimate = 0.0;  // discrete Frechet distance of the grids
};

// Compares the weak-normal path against the arc-length reparameterized smooth
// j-th normal (via the transition function inverse).
SmoothComparison compare_to_smooth(const WeakNormalPath& path, CurvePtr c, int j);

struct NonrectifiableLevel {
    int n = 0;
    double length = 0.0;
    double tc = 0.0;
    double tat = 0.0;
};

struct NonrectifiableReport {
    std::vector<NonrectifiableLevel> levels;
    double quadrature_length = 0.0;
};

// Demonstration on the planar spiral: inscribed length converges while the
// total curvature diverges and the torsion stays zero.
NonrectifiableReport estimate_Fj_nonrectifiable_demo(const std::vector<int>& schedule = {});

// Discrete Frechet distance between two projective polylines.
double discrete_frechet(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b);

}  // namespace jnormals
