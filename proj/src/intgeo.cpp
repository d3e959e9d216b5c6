#include "jnormals/intgeo.hpp"

#include <cmath>
#include <numbers>

#include "jnormals/relaxation.hpp"

namespace jnormals {

namespace {
using std::numbers::pi;
}

std::uint64_t Rng::next() {
    // splitmix64: small, deterministic, good enough for plane sampling
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

GrassmannPlane sample_plane(int dim, int k, Rng& rng) {
    if (k < 1 || k > dim) throw BadParams("plane dimension out of range");
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Vec> rows;
        rows.reserve(k);
        for (int r = 0; r < k; ++r) {
            Vec v(dim);
            for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
            rows.push_back(v);
        }
        try {
            const std::vector<UnitVec> on = gram_schmidt(rows, 1e-8);
            GrassmannPlane p;
            p.basis.resize(k, dim);
            for (int r = 0; r < k; ++r) p.basis.row(r) = on[r].vec();
            return p;
        } catch (const RankDeficient&) {
            continue;  // probability-zero at this tolerance; resample
        }
    }
    throw Error("plane sampling failed repeatedly");
}

Polygonal project_polygonal(const Polygonal& p, const GrassmannPlane& plane) {
    if (plane.dim() != p.dim()) throw DimensionMismatch("projection plane vs polygonal");
    std::vector<Vec> verts;
    verts.reserve(p.vertex_count());
    for (int i = 0; i < p.vertex_count(); ++i) {
        Vec v = plane.project(p.vertex(i));
        if (verts.empty() || (v - verts.back()).norm() > kSegTol) verts.push_back(std::move(v));
    }
    while (p.closed() && verts.size() > 1 && (verts.front() - verts.back()).norm() <= kSegTol)
        verts.pop_back();
    if (static_cast<int>(verts.size()) < (p.closed() ? 3 : 2)) throw DegenerateProjection();
    return Polygonal(std::move(verts), p.closed());
}

std::vector<ProjPoint> project_sphere_polygon(const std::vector<ProjPoint>& points,
                                              const GrassmannPlane& plane) {
    std::vector<ProjPoint> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec w = plane.project(points[i].vec());
        if (w.norm() <= kPolarTol) throw NearPolar(static_cast<int>(i));
        out.push_back(ProjPoint(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projected curves of geodesic polygons
// ---------------------------------------------------------------------------

namespace {

struct ProjectedArc {
    double length = 0.0;
    Vec tangent_in;   // unit tangent of the projected arc at its start (plane coords)
    Vec tangent_out;  // unit tangent at its end
    Vec point_in;     // projected start point (unit, plane coords)
    Vec point_out;    // projected end point
};

// The image of t -> psi_p(cos t x + sin t e), t in [0, theta], is a monotone
// arc of the great circle cut by span(Bx, Be); its length is the swept polar
// angle in that 2-plane.
ProjectedArc project_arc(const Vec& bx, const Vec& be, double theta) {
    const double nx = bx.norm();
    if (nx <= kPolarTol) throw NearPolar(0);
    const Vec w1 = bx / nx;
    Vec b_perp = be - be.dot(w1) * w1;
    const double nb = b_perp.norm();
    if (nb <= kPolarTol) throw NearPolar(0);  // radial image: degenerate plane section
    const Vec w2 = b_perp / nb;

    // 2d coordinates: v(t) = cos t (A,0) + sin t (Bx2, By2)
    const double A = nx;
    const double bx2 = be.dot(w1);
    const double by2 = nb;

    const auto vx = [&](double t) { return std::cos(t) * A + std::sin(t) * bx2; };
    const auto vy = [&](double t) { return std::sin(t) * by2; };
    const auto phase = [&](double t) { return std::atan2(vy(t), vx(t)); };

    // Split at the zeros of v_x (phi crossing +-pi/2) and at extra midpoints,
    // so each piece sweeps less than pi; principal increments are then exact.
    std::vector<double> cuts = {0.0, theta};
    if (bx2 != 0.0 || A != 0.0) {
        const double t0 = std::atan2(-A, bx2);  // tan t = -A/bx2
        for (int k = -2; k <= 2; ++k) {
            const double t = t0 + k * pi;
            if (t > 1e-15 && t < theta - 1e-15) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double swept = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        for (const auto& [a, b] : {std::pair{cuts[i], mid}, std::pair{mid, cuts[i + 1]}}) {
            double d = phase(b) - phase(a);
            while (d > pi) d -= 2.0 * pi;
            while (d < -pi) d += 2.0 * pi;
            swept += d;
        }
    }

    const double orient = (A * by2 >= 0.0) ? 1.0 : -1.0;  // sign of cross(a2, b2)
    const auto embed = [&](double x, double y) { return Vec(x * w1 + y * w2); };
    const auto tangent = [&](double t) {
        const double ph = phase(t);
        return embed(-std::sin(ph) * orient, std::cos(ph) * orient);
    };
    const auto point = [&](double t) {
        const double r = std::hypot(vx(t), vy(t));
        return embed(vx(t) / r, vy(t) / r);
    };

    ProjectedArc arc;
    arc.length = std::abs(swept);
    arc.tangent_in = tangent(0.0);
    arc.tangent_out = tangent(theta);
    arc.point_in = point(0.0);
    arc.point_out = point(theta);
    return arc;
}

}  // namespace

GeodesicPolygonStats projected_curve_stats(const PolygonOnSphere& gamma,
                                           const GrassmannPlane& plane) {
    const int m = static_cast<int>(gamma.points.size());
    GeodesicPolygonStats out;
    if (m <= 1) return out;
    const int arc_count = gamma.closed ? m : m - 1;
    std::vector<ProjectedArc> arcs;
    arcs.reserve(arc_count);
    for (int i = 0; i < arc_count; ++i) {
        const UnitVec& x = gamma.points[i];
        UnitVec y = gamma.points[(i + 1) % m];
        if (gamma.projective && x.dot(y) < 0.0) y = y.negated();
        const double theta = sphere_distance(x, y);
        if (theta < kCollapseTol) continue;
        if (theta > pi - kCollapseTol) throw DegenerateArc();
        const Vec e = orthonormal_residual(y.vec(), std::vector<UnitVec>{x}).normalized();
        arcs.push_back(project_arc(plane.project(x.vec()), plane.project(e), theta));
    }
    if (arcs.empty()) return out;
    for (const ProjectedArc& a : arcs) out.length += a.length;
    const int junctions = gamma.closed ? static_cast<int>(arcs.size())
                                       : static_cast<int>(arcs.size()) - 1;
    for (int i = 0; i < junctions; ++i) {
        const ProjectedArc& a = arcs[i];
        const ProjectedArc& b = arcs[(i + 1) % arcs.size()];
        Vec tin = a.tangent_out;
        Vec tout = b.tangent_in;
        if (gamma.projective && a.point_out.dot(b.point_in) < 0.0) tout = -tout;
        out.geodesic_rotation += std::acos(clamp_unit(tin.dot(tout)));
    }
    out.ambient_tc = out.length + out.geodesic_rotation;
    return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo drivers
// ---------------------------------------------------------------------------

namespace {

struct Accumulator {
    double sum = 0.0, sum2 = 0.0;
    int count = 0;
    void add(double x) {
        sum += x;
        sum2 += x * x;
        ++count;
    }
    IntGeoReport report(double direct, int rejected) const {
        IntGeoReport rep;
        rep.direct = direct;
        rep.n_samples = count;
        rep.rejected = rejected;
        if (count > 0) {
            rep.mc_mean = sum / count;
            const double var = std::max(sum2 / count - rep.mc_mean * rep.mc_mean, 0.0);
            rep.mc_stderr = std::sqrt(var / count);
            rep.z_score = rep.mc_stderr > 0.0 ? (rep.mc_mean - direct) / rep.mc_stderr : 0.0;
        }
        return rep;
    }
};

}  // namespace

TarReport verify_tar(const PolygonOnSphere& gamma, int j, int samples, std::uint64_t seed) {
    if (samples < 100) throw BadParams("verify_tar needs at least 100 samples");
    if (gamma.points.empty()) throw Error("empty polygon");
    const int dim = gamma.points.front().dim();
    if (j < 1 || j > dim - 2) throw InvalidOrder(j);

    GeodesicPolygonStats direct;
    if (gamma.projective) {
        std::vector<ProjPoint> pts;
        for (const UnitVec& u : gamma.points) pts.push_back(ProjPoint(u));
        direct = geodesic_polygon_stats(pts, gamma.closed);
    } else {
        direct = sphere_polygon_stats(gamma.points, gamma.closed);
    }

    Rng rng(seed);
    Accumulator len, rot, tc;
    int rejected = 0;
    for (int it = 0; it < samples; ++it) {
        const GrassmannPlane plane = sample_plane(dim, j + 1, rng);
        try {
            const GeodesicPolygonStats s = projected_curve_stats(gamma, plane);
            len.add(s.length);
            rot.add(s.geodesic_rotation);
            tc.add(s.ambient_tc);
        } catch (const NearPolar&) {
            ++rejected;
        } catch (const DegenerateArc&) {
            ++rejected;
        }
    }
    TarReport rep;
    rep.length = len.report(direct.length, rejected);
    rep.rotation = rot.report(direct.geodesic_rotation, rejected);
    rep.tc = tc.report(direct.ambient_tc, rejected);
    return rep;
}

IntGeoReport verify_igp(const Polygonal& p, int j, int samples, std::uint64_t seed) {
    const int N = p.dim() - 1;
    if (j < 1 || j > N - 1) throw InvalidOrder(j);
    const double direct = discrete_normal(p, j).stats.length;
    Rng rng(seed);
    Accumulator acc;
    int rejected = 0;
    for (int it = 0; it < samples; ++it) {
        const GrassmannPlane plane = sample_plane(p.dim(), j + 1, rng);
        try {
            const Polygonal proj = project_polygonal(p, plane);
            acc.add(discrete_normal(proj, j).stats.length);
        } catch (const DegenerateProjection&) {
            ++rejected;
        } catch (const FlatPolygonal&) {
            ++rejected;
        }
    }
    return acc.report(direct, rejected);
}

IntGeoReport verify_igtc(const Polygonal& p, int j, int samples, std::uint64_t seed) {
    const int N = p.dim() - 1;
    if (j < 0 || j > N - 1) throw InvalidOrder(j);
    const double direct = p.total_curvature();
    Rng rng(seed);
    Accumulator acc;
    int rejected = 0;
    for (int it = 0; it < samples; ++it) {
        const GrassmannPlane plane = sample_plane(p.dim(), j + 1, rng);
        try {
            acc.add(project_polygonal(p, plane).total_curvature());
        } catch (const DegenerateProjection&) {
            ++rejected;
        }
    }
    return acc.report(direct, rejected);
}

double crofton_length_constant(int dim, int k, int samples, std::uint64_t seed) {
    if (k < 1 || k > dim) throw BadParams("crofton constant: plane dimension out of range");
    Rng rng(seed);
    Vec u = Vec::Zero(dim);
    u[0] = 1.0;  // rotational invariance: any fixed unit segment
    double acc = 0.0;
    for (int it = 0; it < samples; ++it) {
        acc += sample_plane(dim, k, rng).project(u).norm();
    }
    return acc / samples;
}

IgcReport verify_igc_curve(CurvePtr c, int j, int n_level, int samples, std::uint64_t seed) {
    const int N = c->dim() - 1;
    if (j < 1 || j > N - 1) throw InvalidOrder(j);
    const RelaxationRun run = estimate_Fj(c, j);
    if (!run.cauchy) throw NotConverged("F_j levels are not Cauchy");
    if (j >= 2 && !estimate_Fj(c, j - 1).cauchy) throw NotConverged("F_{j-1} levels are not Cauchy");

    const InscribedPolygonal ins = inscribe_uniform(c, n_level);
    IgcReport rep;
    rep.lhs = run.best_value();
    Rng rng(seed);
    Accumulator acc;
    int rejected = 0;
    for (int it = 0; it < samples; ++it) {
        const GrassmannPlane plane = sample_plane(c->dim(), j + 1, rng);
        try {
            const Polygonal proj = project_polygonal(ins.polygonal(), plane);
            acc.add(discrete_normal(proj, j).stats.length);
        } catch (const DegenerateProjection&) {
            ++rejected;
        } catch (const FlatPolygonal&) {
            ++rejected;
        }
    }
    rep.report = acc.report(rep.lhs, rejected);
    return rep;
}

}  // namespace jnormals
