#pragma once

#include <cstdint>
#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/discrete_normal.hpp"
#include "jnormals/linalg.hpp"
#include "jnormals/polyline.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

// Deterministic RNG: splitmix64 stream, uniforms from the top 53 bits,
// gaussians by Box-Muller. Identical streams per seed across platforms
// (up to libm rounding).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform();   // (0, 1]
    double gaussian();  // standard normal

  private:
    std::uint64_t next();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Element of the Grassmannian of unoriented k-planes in R^dim, stored as k
// orthonormal rows.
struct GrassmannPlane {
    Eigen::MatrixXd basis;  // k x dim
    int k() const { return static_cast<int>(basis.rows()); }
    int dim() const { return static_cast<int>(basis.cols()); }
    Vec project(const Vec& v) const { return basis * v; }
};

// Rotation-invariant sampling by orthonormalizing gaussian rows.
GrassmannPlane sample_plane(int dim, int k, Rng& rng);

// Coordinates of P in the plane basis; consecutive duplicates merged.
Polygonal project_polygonal(const Polygonal& p, const GrassmannPlane& plane);

// Nearest-point projection of projective points onto the plane's projective
// subspace, in plane coordinates. Throws NearPolar(i) for points nearly
// orthogonal to the plane.
std::vector<ProjPoint> project_sphere_polygon(const std::vector<ProjPoint>& points,
                                              const GrassmannPlane& plane);

struct IntGeoReport {
    double direct = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    int n_samples = 0;
    int rejected = 0;
    double z_score = 0.0;
};

struct TarReport {
    IntGeoReport length;
    IntGeoReport rotation;
    IntGeoReport tc;
};

// Projected-curve stats of one geodesic polygon arc set under a plane: each
// great-circle arc maps to a (reparameterized) great-circle arc of S^j_p;
// lengths are exact swept angles, rotations are angles between the projected
// arc tangents at the junctions.
struct PolygonOnSphere {
    std::vector<UnitVec> points;
    bool closed = false;
    bool projective = false;  // consecutive lifts chosen with nonnegative dots
};

GeodesicPolygonStats projected_curve_stats(const PolygonOnSphere& gamma,
                                           const GrassmannPlane& plane);

// Monte-Carlo check of the projection formulas for the length and geodesic
// rotation of spherical/projective polygons.
TarReport verify_tar(const PolygonOnSphere& gamma, int j, int samples, std::uint64_t seed);

// Monte-Carlo comparison of L([n_j](P)) against the average of the projected
// polygonal's own discrete normal length over (j+1)-planes.
IntGeoReport verify_igp(const Polygonal& p, int j, int samples, std::uint64_t seed);

// Average of the total curvatures of the projections onto (j+1)-planes.
IntGeoReport verify_igtc(const Polygonal& p, int j, int samples, std::uint64_t seed);

// Mean projected length of a unit segment under k-plane projections.
double crofton_length_constant(int dim, int k, int samples, std::uint64_t seed);

struct IgcReport {
    IntGeoReport report;
    double lhs = 0.0;  // estimate of F_j(c)
};

// Smooth-curve integral-geometric formula: F_j(c) against the plane average
// of the projected fine inscription's discrete normal length.
IgcReport verify_igc_curve(CurvePtr c, int j, int n_level, int samples, std::uint64_t seed);

}  // namespace jnormals
