#include "jnormals/linalg.hpp"

#include <cmath>

namespace jnormals {

Vec orthonormal_residual(const Vec& v, std::span<const UnitVec> basis) {
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass) {
        for (const UnitVec& b : basis) {
            r -= r.dot(b.vec()) * b.vec();
        }
    }
    return r;
}

std::vector<UnitVec> gram_schmidt(const std::vector<Vec>& vectors, double tol) {
    std::vector<UnitVec> out;
    out.reserve(vectors.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const Vec& v = vectors[k];
        if (!out.empty() && v.size() != out.front().dim())
            throw DimensionMismatch("gram_schmidt inputs");
        Vec r = orthonormal_residual(v, out);
        const double vn = v.norm();
        const double threshold = vn > tol ? tol * vn : tol;
        if (r.norm() <= threshold) throw RankDeficient(static_cast<int>(k) + 1);
        out.push_back(UnitVec(std::move(r)));
    }
    return out;
}

UnitVec orthogonal_complement_direction(const std::vector<Vec>& basis, double tol) {
    if (basis.empty()) throw RankDeficient(1);
    const Eigen::Index d = basis.front().size();
    if (static_cast<Eigen::Index>(basis.size()) != d - 1)
        throw DimensionMismatch("orthogonal complement needs d-1 vectors of dimension d");
    Eigen::MatrixXd m(d - 1, d);
    double scale = 0.0;
    for (Eigen::Index r = 0; r < d - 1; ++r) {
        if (basis[r].size() != d) throw DimensionMismatch("orthogonal complement basis");
        m.row(r) = basis[r];
        scale = std::max(scale, basis[r].norm());
    }
    Vec res(d);
    Eigen::MatrixXd minor(d - 1, d - 1);
    for (Eigen::Index c = 0; c < d; ++c) {
        Eigen::Index col = 0;
        for (Eigen::Index cc = 0; cc < d; ++cc) {
            if (cc == c) continue;
            minor.col(col++) = m.col(cc);
        }
        const double sign = ((d - 1 + c) % 2 == 0) ? 1.0 : -1.0;
        res[c] = sign * minor.determinant();
    }
    const double n = res.norm();
    if (scale <= 0.0 || n <= tol * std::pow(scale, static_cast<double>(d - 1)))
        throw RankDeficient(static_cast<int>(d - 1));
    return UnitVec(std::move(res));
}

double sphere_distance(const UnitVec& u, const UnitVec& w) {
    return std::acos(clamp_unit(u.dot(w)));
}

double rp_distance(const ProjPoint& p, const ProjPoint& q) {
    return std::acos(clamp_unit(std::abs(p.rep().dot(q.rep()))));
}

UnitVec lift_towards(const UnitVec& base, const ProjPoint& x) {
    return base.dot(x.rep()) >= 0.0 ? x.rep() : x.rep().negated();
}

double turning_angle(const UnitVec& a, const UnitVec& b, const UnitVec& c) {
    const double sin_ab = std::sqrt(std::max(0.0, 1.0 - clamp_unit(a.dot(b)) * clamp_unit(a.dot(b))));
    const double sin_bc = std::sqrt(std::max(0.0, 1.0 - clamp_unit(b.dot(c)) * clamp_unit(b.dot(c))));
    if (sin_ab < kSegTol || sin_bc < kSegTol) throw DegenerateArc();
    // arrival tangent of a->b at b, departure tangent of b->c at b
    Vec tin = b.vec() * a.dot(b) - a.vec();
    Vec tout = c.vec() - b.vec() * c.dot(b);
    tin /= tin.norm();
    tout /= tout.norm();
    return std::acos(clamp_unit(tin.dot(tout)));
}

namespace {

std::vector<ProjPoint> collapse_duplicates(std::span<const ProjPoint> points, bool closed) {
    std::vector<ProjPoint> q;
    q.reserve(points.size());
    for (const ProjPoint& p : points) {
        if (q.empty() || rp_distance(q.back(), p) > kCollapseTol) q.push_back(p);
    }
    while (closed && q.size() > 1 && rp_distance(q.front(), q.back()) <= kCollapseTol) q.pop_back();
    return q;
}

}  // namespace

GeodesicPolygonStats geodesic_polygon_stats(std::span<const ProjPoint> points, bool closed) {
    GeodesicPolygonStats out;
    const std::vector<ProjPoint> q = collapse_duplicates(points, closed);
    const int m = static_cast<int>(q.size());
    if (m <= 1) return out;
    const int arcs = closed ? m : m - 1;
    for (int i = 0; i < arcs; ++i) {
        out.length += rp_distance(q[i], q[(i + 1) % m]);
    }
    const int j0 = closed ? 0 : 1;
    const int j1 = closed ? m : m - 1;
    for (int i = j0; i < j1; ++i) {
        const UnitVec& b = q[i].rep();
        const UnitVec a = lift_towards(b, q[(i - 1 + m) % m]);
        const UnitVec c = lift_towards(b, q[(i + 1) % m]);
        out.geodesic_rotation += turning_angle(a, b, c);
    }
    out.ambient_tc = out.length + out.geodesic_rotation;
    return out;
}

GeodesicPolygonStats sphere_polygon_stats(std::span<const UnitVec> points, bool closed) {
    GeodesicPolygonStats out;
    std::vector<UnitVec> q;
    q.reserve(points.size());
    for (const UnitVec& p : points) {
        if (q.empty() || sphere_distance(q.back(), p) > kCollapseTol) q.push_back(p);
    }
    while (closed && q.size() > 1 && sphere_distance(q.front(), q.back()) <= kCollapseTol) q.pop_back();
    const int m = static_cast<int>(q.size());
    if (m <= 1) return out;
    const int arcs = closed ? m : m - 1;
    for (int i = 0; i < arcs; ++i) {
        out.length += sphere_distance(q[i], q[(i + 1) % m]);
    }
    const int j0 = closed ? 0 : 1;
    const int j1 = closed ? m : m - 1;
    for (int i = j0; i < j1; ++i) {
        out.geodesic_rotation += turning_angle(q[(i - 1 + m) % m], q[i], q[(i + 1) % m]);
    }
    out.ambient_tc = out.length + out.geodesic_rotation;
    return out;
}

}  // namespace jnormals
