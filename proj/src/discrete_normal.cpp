#include "jnormals/discrete_normal.hpp"

#include <cmath>
#include <numbers>

namespace jnormals {

namespace {

// Indices after `from` in traversal order; for closed polygonals the search
// wraps cyclically and is capped at one full loop.
class LaterIndices {
  public:
    LaterIndices(int from, int count, bool closed) : from_(from), count_(count), closed_(closed) {}
    template <class F>
    bool first(F&& accept) const {
        if (closed_) {
            for (int t = 1; t < count_; ++t) {
                if (accept((from_ + t) % count_)) return true;
            }
        } else {
            for (int h = from_ + 1; h < count_; ++h) {
                if (accept(h)) return true;
            }
        }
        return false;
    }

  private:
    int from_, count_;
    bool closed_;
};

// Builds the pivot chain (i, v_i^1, ..., v_i^k) of length chain_len, or
// nullopt when it cannot be completed. The first pivot is the first later
// direction with a different projective class; each further pivot is the
// first later direction keeping the pivot set linearly independent.
std::optional<DiscreteOsculating> pivot_chain(const std::vector<UnitVec>& dirs, int i,
                                              int chain_len, bool closed, double tol) {
    DiscreteOsculating osc;
    osc.segment_index = i;
    osc.pivots.push_back(i);
    osc.frame.push_back(dirs[i]);
    if (chain_len == 0) return osc;

    const int m = static_cast<int>(dirs.size());
    const ProjPoint base{dirs[i].vec()};
    int last = i;
    const bool found_first = LaterIndices(last, m, closed).first([&](int h) {
        if (rp_distance(ProjPoint(dirs[h].vec()), base) <= kAngleTol) return false;
        Vec r = orthonormal_residual(dirs[h].vec(), osc.frame);
        osc.pivots.push_back(h);
        osc.frame.push_back(UnitVec(std::move(r)));
        last = h;
        return true;
    });
    if (!found_first) return std::nullopt;

    for (int k = 2; k <= chain_len; ++k) {
        const bool found = LaterIndices(last, m, closed).first([&](int h) {
            Vec r = orthonormal_residual(dirs[h].vec(), osc.frame);
            if (r.norm() <= tol) return false;  // near-dependent: skip candidate
            osc.pivots.push_back(h);
            osc.frame.push_back(UnitVec(std::move(r)));
            last = h;
            return true;
        });
        if (!found) return std::nullopt;
    }
    return osc;
}

// Direction orthogonal to the chain directions inside the discrete osculating
// space: the residual of v_i against the orthonormalized chain.
ProjPoint chain_normal(const std::vector<UnitVec>& dirs, const DiscreteOsculating& osc) {
    std::vector<UnitVec> chain_frame;
    chain_frame.reserve(osc.pivots.size() - 1);
    for (std::size_t k = 1; k < osc.pivots.size(); ++k) {
        Vec r = orthonormal_residual(dirs[osc.pivots[k]].vec(), chain_frame);
        chain_frame.push_back(UnitVec(std::move(r)));
    }
    Vec r = orthonormal_residual(dirs[osc.segment_index].vec(), chain_frame);
    if (r.norm() <= kSegTol) throw RankDeficient(static_cast<int>(osc.pivots.size()));
    return ProjPoint(UnitVec(std::move(r)));
}

// Orthogonal complement of the discrete osculating N-space, computed from the
// orthonormalized pivot frame so the cofactor expansion stays well-conditioned;
// the triangular change of basis preserves the cofactor orientation.
ProjPoint complement_normal(const DiscreteOsculating& osc, double tol) {
    std::vector<Vec> basis;
    basis.reserve(osc.frame.size());
    for (const UnitVec& u : osc.frame) basis.push_back(u.vec());
    return ProjPoint(orthogonal_complement_direction(basis, tol));
}

}  // namespace

DiscreteNormal discrete_normal(const Polygonal& p, int j, double tol) {
    const int N = p.dim() - 1;
    if (j < 1 || j > N) throw InvalidOrder(j);
    const std::vector<UnitVec> dirs = p.segment_directions();
    const int m = static_cast<int>(dirs.size());
    // j < N: chain of j pivots beyond v_i; j = N: chain of N-1 pivots, then
    // the orthogonal complement of the N pivot directions.
    const int chain_len = (j == N) ? N - 1 : j;

    std::vector<std::optional<ProjPoint>> pts(m);
    std::vector<std::vector<int>> chains(m);
    int resolved = 0;
    for (int i = 0; i < m; ++i) {
        const auto osc = pivot_chain(dirs, i, chain_len, p.closed(), tol);
        if (!osc) continue;
        pts[i] = (j == N) ? complement_normal(*osc, tol) : chain_normal(dirs, *osc);
        chains[i] = osc->pivots;
        ++resolved;
    }
    if (resolved == 0) throw FlatPolygonal();
    // End fallback: [n_j(P,i)] := [n_j(P,i-1)] where the chain is incomplete.
    // An unresolved head of an open polygonal has no earlier normal; reject.
    if (!p.closed() && !pts.front()) throw FlatPolygonal();
    if (!pts.front()) {
        for (int i = m - 1; i >= 0; --i) {
            if (pts[i]) {
                pts[0] = pts[i];
                break;
            }
        }
    }
    for (int i = 1; i < m; ++i) {
        if (!pts[i]) pts[i] = pts[i - 1];
    }

    DiscreteNormal out;
    out.j = j;
    out.pivot_chains = std::move(chains);
    out.points.reserve(m);
    for (auto& q : pts) out.points.push_back(*q);
    out.stats = geodesic_polygon_stats(out.points, p.closed());
    return out;
}

double tat(const Polygonal& p) {
    if (p.dim() != 3) throw DimensionMismatch("total absolute torsion needs ambient dimension 3");
    return discrete_normal(p, 2).stats.length;
}

bool InequalityReport::all_hold() const {
    if (!pigp_holds) return false;
    for (const InequalityRow& r : rows) {
        if (!r.skipped && !r.holds) return false;
    }
    return true;
}

InequalityReport check_inequalities(const Polygonal& p, double tol) {
    const int N = p.dim() - 1;
    InequalityReport rep;
    rep.tc = p.total_curvature();
    std::vector<std::optional<DiscreteNormal>> dn(N + 1);
    for (int j = 1; j <= N; ++j) {
        try {
            dn[j] = discrete_normal(p, j, tol);
        } catch (const FlatPolygonal&) {
            dn[j] = std::nullopt;
        }
    }
    rep.length_n1 = dn[1] ? dn[1]->stats.length : 0.0;
    rep.pigp_holds = dn[1] ? (rep.length_n1 <= rep.tc + 1e-9) : true;
    for (int j = 1; j <= N; ++j) {
        InequalityRow row;
        row.j = j;
        if (!dn[j] || (j >= 2 && !dn[j - 1])) {
            row.skipped = true;
            rep.rows.push_back(row);
            continue;
        }
        row.lhs = dn[j]->stats.ambient_tc;
        row.rhs = (j == 1) ? rep.tc + dn[1]->stats.length
                           : dn[j - 1]->stats.length + dn[j]->stats.length;
        row.holds = row.lhs <= row.rhs + 1e-9;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Example construction: monotonicity failure of TAT under coarsening.
// ---------------------------------------------------------------------------

namespace {

Vec sphere_step(const Vec& x, const Vec& dir, double arc) {
    Vec d = dir - dir.dot(x) * x;
    d /= d.norm();
    return std::cos(arc) * x + std::sin(arc) * d;
}

Vec tangent_at(const Vec& x, const Vec& y) {
    Vec t = y - y.dot(x) * x;
    return t / t.norm();
}

Vec cross3(const Vec& a, const Vec& b) {
    Vec c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
    return c;
}

double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
    const auto side = [](const Vec& u, const Vec& v) { return std::acos(clamp_unit(u.dot(v))); };
    const double sa = side(b, c), sb = side(a, c), sc = side(a, b);
    const double s = 0.5 * (sa + sb + sc);
    const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - sa)) * std::tan(0.5 * (s - sb)) *
                     std::tan(0.5 * (s - sc));
    return 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
}

struct EmonTantrix {
    Vec v1, v2, v3, v4, v5, v6;
};

// Tantrix skeleton: v1,v2,v3 on the equator, a turn by alpha at v3, a turn by
// beta at v4, then v5,v6 on the second circle.
EmonTantrix emon_tantrix(double alpha, double beta, double arc_eq, double arc_mid,
                         double arc_c2a, double arc_c2b) {
    EmonTantrix t;
    const auto equator = [](double phi) {
        Vec v(3);
        v << std::cos(phi), std::sin(phi), 0.0;
        return v;
    };
    t.v1 = equator(-2.0 * arc_eq);
    t.v2 = equator(-arc_eq);
    t.v3 = equator(0.0);
    const Vec fwd = tangent_at(t.v3, equator(1.0));
    const Vec turned = std::cos(alpha) * fwd + std::sin(alpha) * cross3(t.v3, fwd);
    t.v4 = sphere_step(t.v3, turned, arc_mid);
    const Vec fwd4 = tangent_at(t.v4, sphere_step(t.v3, turned, arc_mid + 0.1));
    const Vec turned4 = std::cos(beta) * fwd4 + std::sin(beta) * cross3(t.v4, fwd4);
    t.v5 = sphere_step(t.v4, turned4, arc_c2a);
    const Vec fwd5 = tangent_at(t.v5, sphere_step(t.v4, turned4, arc_c2a + 0.1));
    t.v6 = sphere_step(t.v5, fwd5, arc_c2b);
    return t;
}

double emon_turning(const Vec& a, const Vec& b, const Vec& c) {
    return turning_angle(UnitVec(a), UnitVec(b), UnitVec(c));
}

// Position w on the arc v3->v4 so the two geodesic triangles have equal area;
// returns the mixing weight u with w ~ (1-u) v3 + u v4.
double equal_area_weight(const EmonTantrix& t) {
    const auto area_diff = [&](double u) {
        Vec w = (1.0 - u) * t.v3 + u * t.v4;
        w /= w.norm();
        return spherical_triangle_area(t.v2, t.v3, w) - spherical_triangle_area(w, t.v4, t.v5);
    };
    double lo = 1e-6, hi = 1.0 - 1e-6;
    double flo = area_diff(lo);
    if (flo * area_diff(hi) > 0.0) throw Error("equal-area bisection bracket failed");
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = area_diff(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

EmonCounterexample counterexample_emon() {
    const double alpha = 0.06, beta = 0.09;
    const double arc_eq = 0.5, arc_mid = 1.1, arc_c2b = 0.5;

    // Outer balancing: pick the arc v4->v5 so that the triangle area equals
    // eps - alpha; the equal-area weight is re-tuned for every candidate.
    const auto balance = [&](double arc_c2a, EmonTantrix* t_out, double* u_out) {
        const EmonTantrix t = emon_tantrix(alpha, beta, arc_eq, arc_mid, arc_c2a, arc_c2b);
        const double u = equal_area_weight(t);
        Vec w = (1.0 - u) * t.v3 + u * t.v4;
        w /= w.norm();
        const double eps = emon_turning(w, t.v5, t.v6);
        const double area = spherical_triangle_area(t.v2, t.v3, w);
        if (t_out) *t_out = t;
        if (u_out) *u_out = u;
        return (eps - alpha) - area;
    };

    double lo = 0.05, hi = 1.2;
    if (balance(lo, nullptr, nullptr) * balance(hi, nullptr, nullptr) > 0.0)
        throw Error("balancing bisection bracket failed");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (balance(lo, nullptr, nullptr) * balance(mid, nullptr, nullptr) <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    EmonTantrix t;
    double u = 0.5;
    balance(0.5 * (lo + hi), &t, &u);

    // Realize P with segment lengths 1,1,2(1-u),2u,1,1 so that merging the two
    // middle segments gives direction w on the arc between v3 and v4.
    const std::vector<Vec> dirs = {t.v1, t.v2, t.v3, t.v4, t.v5, t.v6};
    const std::vector<double> lens = {1.0, 1.0, 2.0 * (1.0 - u), 2.0 * u, 1.0, 1.0};
    std::vector<Vec> verts;
    Vec x = Vec::Zero(3);
    verts.push_back(x);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        x = x + lens[i] * dirs[i];
        verts.push_back(x);
    }
    std::vector<Vec> verts_prime = verts;
    verts_prime.erase(verts_prime.begin() + 3);  // drop the vertex between sigma_3 and sigma_4

    EmonCounterexample out{Polygonal(verts, false), Polygonal(verts_prime, false), 0, 0, 0, 0, 0};
    out.tat_p = tat(out.p);
    out.tat_p_prime = tat(out.p_prime);
    out.alpha = emon_turning(t.v2, t.v3, t.v4);
    out.beta = emon_turning(t.v3, t.v4, t.v5);
    Vec w = (1.0 - u) * t.v3 + u * t.v4;
    w /= w.norm();
    out.eps = emon_turning(w, t.v5, t.v6);
    return out;
}

}  // namespace jnormals
