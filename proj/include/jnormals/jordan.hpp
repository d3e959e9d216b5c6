#pragma once

#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/linalg.hpp"
#include "jnormals/polyline.hpp"
#include "jnormals/quadrature.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

// Frame and curvatures at one parameter, from Gram-Schmidt on the arc-length
// derivatives. Curvatures are the Jordan-system coefficients obtained as
// ratios of consecutive orthogonalization residual norms (positive for the
// Gram-Schmidt orientation).
struct JordanFrameSample {
    double s = 0.0;
    std::vector<UnitVec> frame;       // t = n_0, n_1, ..., n_j
    std::vector<double> curvatures;   // k_1 .. k_j
    double k_next = 0.0;              // k_{j+1} when j < N, else 0
    double speed_nj = 0.0;            // ||dot n_j||
};

// Throws NotSmoothlyTurning when (c', c'', ..., c^{(j+1)}) fails the rank
// test at s (relative tolerance `tol`).
JordanFrameSample jordan_frame(const CurveOracle& c, double s, int j, double tol = 1e-8);

// Hodge-oriented last normal *(t ^ n_1 ^ ... ^ n_{N-1}) and the signed last
// curvature in that orientation (the torsion when N = 2).
UnitVec hodge_last_normal(const CurveOracle& c, double s, double tol = 1e-8);
double signed_last_curvature(const CurveOracle& c, double s, double tol = 1e-8);

// Classical signed torsion of a unit-speed curve in R^3.
double signed_torsion_r3(const CurveOracle& c, double s);

// Integral of ||dot n_j|| over the domain, splitting at declared singular
// parameters (mildly turning builtins).
double smooth_nj_length(const CurveOracle& c, int j, const QuadratureOptions& quad = {});

// Tabulated transition function phi_j(s) = int_a^s ||dot n_j|| with monotone
// Hermite interpolation and inverse by bisection + Newton.
class TransitionFunction {
  public:
    TransitionFunction(CurvePtr c, int j, int cells = 2048);

    double total() const { return phi_nodes_.back(); }
    double phi(double s) const;
    double psi(double t) const;  // inverse
    int order() const { return j_; }

  private:
    CurvePtr curve_;
    int j_;
    std::vector<double> s_nodes_, phi_nodes_, speed_nodes_;
};

struct OsculatingSpace {
    std::vector<int> derivative_indices;  // 1 < i_2 < ... < i_{j+1}
    std::vector<UnitVec> basis;           // orthonormal, spans the osculating space
    ProjPoint normal;                     // mildly-turning j-th normal class
};

// Osculating (j+1)-space at s for mildly smoothly turning curves: greedy
// smallest derivative indices achieving rank j+1. Throws NotMildlyTurning
// when no selection up to max_order works.
OsculatingSpace osculating_space(const CurveOracle& c, double s, int j, double tol = 1e-8);

}  // namespace jnormals
