#pragma once

#include <vector>

#include "jnormals/curve.hpp"
#include "jnormals/linalg.hpp"
#include "jnormals/types.hpp"

namespace jnormals {

// Oriented polygonal curve with non-trivial segments.
class Polygonal {
  public:
    Polygonal(std::vector<Vec> vertices, bool closed);

    int dim() const { return static_cast<int>(verts_.front().size()); }
    bool closed() const { return closed_; }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int segment_count() const { return closed_ ? vertex_count() : vertex_count() - 1; }
    const Vec& vertex(int i) const { return verts_[i]; }
    const std::vector<Vec>& vertices() const { return verts_; }

    // Segment vector i runs from vertex i to vertex (i+1) mod n.
    Vec segment(int i) const;
    double segment_length(int i) const { return segment(i).norm(); }

    std::vector<UnitVec> segment_directions() const;
    double length() const;
    double mesh() const;
    double total_curvature() const;

  private:
    std::vector<Vec> verts_;
    bool closed_;
};

// Polygonal inscribed in a curve oracle; vertices[i] = curve(params[i]),
// params strictly increasing (cyclically within one period when closed).
class InscribedPolygonal {
  public:
    InscribedPolygonal(CurvePtr curve, std::vector<double> params);

    const Polygonal& polygonal() const { return poly_; }
    const CurveOracle& curve() const { return *curve_; }
    CurvePtr curve_ptr() const { return curve_; }
    const std::vector<double>& params() const { return params_; }

  private:
    CurvePtr curve_;
    std::vector<double> params_;
    Polygonal poly_;
};

// Maximum over parameter arcs of the arc diameter, approximated on a uniform
// grid of samples_per_arc points per arc (pairwise distances). Converges to
// the exact modulus from below as samples_per_arc grows.
double modulus(const InscribedPolygonal& p, int samples_per_arc = 33);

// Insert factor-1 equally spaced parameters inside every parameter arc.
InscribedPolygonal refine(const InscribedPolygonal& p, int factor);

// Uniform-parameter inscription with n segments (closed: n vertices).
InscribedPolygonal inscribe_uniform(CurvePtr curve, int n);

// View a polygonal as an arc-length parameterized piecewise-linear oracle
// (evaluation only; no smooth derivatives beyond the first).
CurvePtr polygonal_as_curve(const Polygonal& p);

}  // namespace jnormals
