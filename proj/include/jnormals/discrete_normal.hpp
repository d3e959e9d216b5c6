#pragma once

#include <optional>
#include <vector>

#include "jnormals/linalg.hpp"
#include "jnormals/polyline.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

// Pivot data for one segment: the segment index followed by the chain of
// selected later segments, in strictly increasing traversal order, together
// with an orthonormal frame of the discrete osculating space they span.
struct DiscreteOsculating {
    int segment_index = 0;
    std::vector<int> pivots;  // starts with segment_index
    std::vector<UnitVec> frame;
};

// The discrete j-th normal [n_j](P): one projective point per segment (after
// end-fallback fill) joined by minimal geodesic arcs.
struct DiscreteNormal {
    int j = 0;
    std::vector<ProjPoint> points;
    GeodesicPolygonStats stats;
    // Pivot chains actually used; empty entry where the end fallback applied.
    std::vector<std::vector<int>> pivot_chains;
};

// Discrete j-th normal of P for 1 <= j <= N, N+1 the ambient dimension.
// For j < N the point at segment i is the direction orthogonal to the pivot
// chain inside the discrete osculating (j+1)-space; for j = N it is the
// orthogonal complement of the discrete osculating N-space.
DiscreteNormal discrete_normal(const Polygonal& p, int j, double tol = kRankTol);

// Total absolute torsion of a polygonal in R^3: length of [n_2](P) in RP^2.
double tat(const Polygonal& p);

struct InequalityRow {
    int j = 0;
    double lhs = 0.0;            // ambient TC of [n_j](P)
    double rhs = 0.0;            // L([n_{j-1}]) + L([n_j]); TC(P) + L([n_1]) for j=1
    bool holds = false;
    bool skipped = false;        // FlatPolygonal for this order
};

struct InequalityReport {
    std::vector<InequalityRow> rows;
    double tc = 0.0;             // TC(P)
    double length_n1 = 0.0;      // L([n_1](P))
    bool pigp_holds = false;     // L([n_1](P)) <= TC(P)
    bool all_hold() const;
};

// Evaluates the total-curvature inequality suite for every applicable order.
InequalityReport check_inequalities(const Polygonal& p, double tol = kRankTol);

struct EmonCounterexample {
    Polygonal p;
    Polygonal p_prime;
    double tat_p = 0.0;
    double tat_p_prime = 0.0;
    double alpha = 0.0;  // tantrix turning angle of P at v3
    double beta = 0.0;   // tantrix turning angle of P at v4
    double eps = 0.0;    // tantrix turning angle of P' at v5
};

// Six-segment polygonal P spanning two planes and its five-segment coarsening
// P', tuned so that the two geodesic triangles cut by the replaced vertex have
// equal area and match the balancing condition; then TAT(P) = alpha + beta and
// TAT(P') - TAT(P) = 2 (eps - alpha) > 0.
EmonCounterexample counterexample_emon();

}  // namespace jnormals
