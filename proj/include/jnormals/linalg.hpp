#pragma once

#include <span>
#include <vector>

#include "jnormals/types.hpp"

namespace jnormals {

// Residual of v against an orthonormal basis, subtracted twice for stability.
Vec orthonormal_residual(const Vec& v, std::span<const UnitVec> basis);

// Modified Gram-Schmidt with re-orthogonalization. The k-th output is the
// normalized residual of the k-th input against the span of the previous
// outputs. Throws RankDeficient(k) when the k-th residual norm falls below
// tol relative to the input norm (absolute tol for near-zero inputs).
std::vector<UnitVec> gram_schmidt(const std::vector<Vec>& vectors, double tol = kRankTol);

// Unit vector orthogonal to d-1 independent vectors of dimension d, via
// cofactor expansion of the matrix whose first d-1 rows are the basis.
// The sign follows the cofactor orientation: basis (e1,..,e_{d-1}) -> +e_d.
UnitVec orthogonal_complement_direction(const std::vector<Vec>& basis, double tol = kRankTol);

double sphere_distance(const UnitVec& u, const UnitVec& w);
double rp_distance(const ProjPoint& p, const ProjPoint& q);

// Exterior angle in [0, pi] at b between the minimal geodesics a->b and b->c.
// Throws DegenerateArc when either arc is trivial or antipodal.
double turning_angle(const UnitVec& a, const UnitVec& b, const UnitVec& c);

struct GeodesicPolygonStats {
    double length = 0.0;
    double geodesic_rotation = 0.0;
    double ambient_tc = 0.0;
};

// Stats of the geodesic polygon through ProjPoints (consecutive duplicates are
// collapsed first). Junction angles are computed on local sphere lifts with
// nonnegative consecutive dot products.
GeodesicPolygonStats geodesic_polygon_stats(std::span<const ProjPoint> points, bool closed);

// Spherical analogue: arcs are minimal great-circle arcs between the given
// unit vectors, junction angles are plain turning angles.
GeodesicPolygonStats sphere_polygon_stats(std::span<const UnitVec> points, bool closed);

// Lift x to the representative with nonnegative dot against base.
UnitVec lift_towards(const UnitVec& base, const ProjPoint& x);

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace jnormals
