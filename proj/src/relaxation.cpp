#include "jnormals/relaxation.hpp"

#include <algorithm>
#include <cmath>

namespace jnormals {

std::vector<int> default_schedule() { return {16, 32, 64, 128, 256, 512, 1024, 2048, 4096}; }

namespace {

// Richardson estimate from the last three levels when successive differences
// contract by at least 1.5.
std::optional<double> richardson(const std::vector<RelaxLevel>& levels, bool* cauchy) {
    *cauchy = false;
    if (levels.size() < 3) return std::nullopt;
    const double l0 = levels[levels.size() - 3].length_j;
    const double l1 = levels[levels.size() - 2].length_j;
    const double l2 = levels[levels.size() - 1].length_j;
    const double d1 = std::abs(l1 - l0);
    const double d2 = std::abs(l2 - l1);
    // level sums accumulate O(n eps) noise; an exactly constant sequence is
    // converged regardless of the contraction ratio
    if (d2 <= 1e-10 * (1.0 + std::abs(l2))) {
        *cauchy = true;
        return l2;
    }
    if (d1 / d2 < 1.5) return std::nullopt;
    *cauchy = true;
    const double rate = d2 / d1;
    return l2 + (l2 - l1) * rate / (1.0 - rate);
}

}  // namespace

RelaxationRun estimate_Fj(CurvePtr c, int j, const std::vector<int>& schedule,
                          int modulus_samples) {
    const int N = c->dim() - 1;
    if (j < 1 || j > N) throw InvalidOrder(j);
    RelaxationRun run;
    run.j = j;
    for (int n : schedule) {
        const InscribedPolygonal ins = inscribe_uniform(c, n);
        DiscreteNormal dn;
        try {
            dn = discrete_normal(ins.polygonal(), j);
        } catch (const FlatPolygonal&) {
            continue;  // too coarse for the pivot search; retry at the next level
        }
        RelaxLevel lvl;
        lvl.n = n;
        lvl.modulus = modulus(ins, modulus_samples);
        lvl.mesh = ins.polygonal().mesh();
        lvl.length_j = dn.stats.length;
        lvl.tc_ambient_j = dn.stats.ambient_tc;
        run.levels.push_back(lvl);
    }
    if (run.levels.empty()) throw DegenerateCurve("no schedule level admits the discrete normal");
    run.extrapolated = richardson(run.levels, &run.cauchy);
    return run;
}

F1TcReport check_f1_tc_bound(CurvePtr c, const std::vector<int>& schedule) {
    F1TcReport rep;
    for (int n : schedule) {
        const InscribedPolygonal ins = inscribe_uniform(c, n);
        F1TcLevel lvl;
        lvl.n = n;
        try {
            lvl.length_n1 = discrete_normal(ins.polygonal(), 1).stats.length;
        } catch (const FlatPolygonal&) {
            continue;
        }
        lvl.tc = ins.polygonal().total_curvature();
        lvl.holds = lvl.length_n1 <= lvl.tc + 1e-9;
        rep.all_hold = rep.all_hold && lvl.holds;
        rep.levels.push_back(lvl);
    }
    return rep;
}

namespace {

// Geodesic interpolation between consecutive projective points at fraction u,
// on the local lift with nonnegative dot product.
ProjPoint slerp(const ProjPoint& a, const ProjPoint& b, double u) {
    const UnitVec base = a.rep();
    const UnitVec lifted = lift_towards(base, b);
    const double ang = std::acos(clamp_unit(base.dot(lifted)));
    if (ang < kCollapseTol) return a;
    const Vec e = orthonormal_residual(lifted.vec(), std::vector<UnitVec>{base}).normalized();
    return ProjPoint(Vec(std::cos(u * ang) * base.vec() + std::sin(u * ang) * e));
}

}  // namespace

WeakNormalPath weak_normal(CurvePtr c, int j, int n_final, int grid) {
    if (grid < 2) throw BadParams("weak normal grid needs at least 2 points");
    // Hypotheses of the identification: Cauchy convergence for F_j, and for
    // F_{j-1} when j >= 2 (TC boundedness when j = 1).
    const RelaxationRun run_j = estimate_Fj(c, j);
    if (!run_j.cauchy) throw NotConverged("F_j levels are not Cauchy");
    if (j >= 2) {
        const RelaxationRun run_prev = estimate_Fj(c, j - 1);
        if (!run_prev.cauchy) throw NotConverged("F_{j-1} levels are not Cauchy");
    } else {
        const InscribedPolygonal ins = inscribe_uniform(c, default_schedule().back());
        if (!std::isfinite(ins.polygonal().total_curvature()))
            throw NotConverged("total curvature unbounded");
    }

    const InscribedPolygonal ins = inscribe_uniform(c, n_final);
    const DiscreteNormal dn = discrete_normal(ins.polygonal(), j);

    // collapse duplicates, accumulate arc lengths
    std::vector<ProjPoint> pts;
    for (const ProjPoint& p : dn.points) {
        if (pts.empty() || rp_distance(pts.back(), p) > kCollapseTol) pts.push_back(p);
    }
    if (c->closed() && pts.size() > 1 && rp_distance(pts.front(), pts.back()) <= kCollapseTol)
        pts.pop_back();
    const bool wrap = c->closed();
    const int arcs = wrap ? static_cast<int>(pts.size()) : static_cast<int>(pts.size()) - 1;

    WeakNormalPath path;
    path.j = j;
    if (pts.size() == 1 || arcs <= 0) {
        path.total_length = 0.0;
        path.samples.assign(grid, pts.front());
        return path;
    }
    std::vector<double> cum(arcs + 1, 0.0);
    for (int i = 0; i < arcs; ++i) {
        cum[i + 1] = cum[i] + rp_distance(pts[i], pts[(i + 1) % pts.size()]);
    }
    path.total_length = cum.back();
    path.samples.reserve(grid);
    for (int g = 0; g < grid; ++g) {
        const double t = path.total_length * g / (grid - 1);
        const auto it = std::upper_bound(cum.begin(), cum.end(), t);
        int i = static_cast<int>(it - cum.begin()) - 1;
        i = std::clamp(i, 0, arcs - 1);
        const double u = (t - cum[i]) / (cum[i + 1] - cum[i]);
        path.samples.push_back(slerp(pts[i], pts[(i + 1) % pts.size()], u));
    }
    return path;
}

double discrete_frechet(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b) {
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(b.size());
    if (n == 0 || m == 0) throw Error("empty polyline in Frechet distance");
    std::vector<double> prev(m), cur(m);
    for (int jj = 0; jj < m; ++jj) {
        const double d = rp_distance(a[0], b[jj]);
        prev[jj] = jj == 0 ? d : std::max(prev[jj - 1], d);
    }
    for (int i = 1; i < n; ++i) {
        for (int jj = 0; jj < m; ++jj) {
            const double d = rp_distance(a[i], b[jj]);
            double reach = prev[jj];
            if (jj > 0) reach = std::min(reach, std::min(prev[jj - 1], cur[jj - 1]));
            cur[jj] = std::max(reach, d);
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

SmoothComparison compare_to_smooth(const WeakNormalPath& path, CurvePtr c, int j) {
    const TransitionFunction tf(c, j);
    const int grid = static_cast<int>(path.samples.size());
    SmoothComparison out;
    std::vector<ProjPoint> smooth;
    smooth.reserve(grid);
    for (int g = 0; g < grid; ++g) {
        // scale to the smooth total (the measured discrete length differs by O(1/n))
        const double t = tf.total() * g / (grid - 1);
        const double s = tf.psi(t);
        ProjPoint q = [&] {
            try {
                return ProjPoint(jordan_frame(*c, s, j).frame.back());
            } catch (const NotSmoothlyTurning&) {
                return osculating_space(*c, s, j).normal;
            }
        }();
        smooth.push_back(q);
        out.max_pointwise = std::max(out.max_pointwise, rp_distance(path.samples[g], q));
    }
    out.frechet_estimate = discrete_frechet(path.samples, smooth);
    return out;
}

NonrectifiableReport estimate_Fj_nonrectifiable_demo(const std::vector<int>& schedule) {
    const CurvePtr spiral = builtin_curve("spiral_infinite_tc");
    std::vector<int> levels = schedule;
    if (levels.empty()) levels = {100, 200, 400, 1000, 4000, 16000, 65536, 262144};
    NonrectifiableReport rep;
    rep.quadrature_length = integrate(
        [&](double t) { return spiral->deriv(t, 1).norm(); }, 1e-9, 1.0, {1e-10, 1e-14, 48, {}});
    for (int n : levels) {
        const InscribedPolygonal ins = inscribe_uniform(spiral, n);
        NonrectifiableLevel lvl;
        lvl.n = n;
        lvl.length = ins.polygonal().length();
        lvl.tc = ins.polygonal().total_curvature();
        lvl.tat = tat(ins.polygonal());
        rep.levels.push_back(lvl);
    }
    return rep;
}

}  // namespace jnormals
