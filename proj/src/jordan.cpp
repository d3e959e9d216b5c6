#include "jnormals/jordan.hpp"

#include <algorithm>
#include <cmath>

namespace jnormals {

namespace {

struct GsLadder {
    std::vector<UnitVec> frame;
    std::vector<double> residual_norms;  // r_m = ||residual of c^{(m+1)}||, r_0 = ||c'||
};

// Orthonormalizes derivatives 1..count; enforces independence up to
// `strict_count` of them (relative tolerance), the rest may degenerate.
GsLadder derivative_ladder(const CurveOracle& c, double s, int count, int strict_count,
                           double tol) {
    if (count > c.max_order())
        throw Error(c.name() + ": derivative order " + std::to_string(count) + " unavailable");
    GsLadder out;
    for (int k = 1; k <= count; ++k) {
        const Vec d = c.deriv(s, k);
        const Vec r = orthonormal_residual(d, out.frame);
        const double rn = r.norm();
        out.residual_norms.push_back(rn);
        if (k <= strict_count) {
            if (rn <= tol * std::max(d.norm(), 1e-300)) throw NotSmoothlyTurning(s);
            out.frame.push_back(UnitVec(r / rn));
        } else if (rn > kSegTol) {
            out.frame.push_back(UnitVec(r / rn));
        }
    }
    return out;
}

}  // namespace

JordanFrameSample jordan_frame(const CurveOracle& c, double s, int j, double tol) {
    const int N = c.dim() - 1;
    if (j < 1 || j > N) throw InvalidOrder(j);
    if (!c.arc_length_parameterized()) throw Error(c.name() + ": not arc-length parameterized");
    const int count = (j < N) ? j + 2 : N + 1;
    const GsLadder gs = derivative_ladder(c, s, count, j + 1, tol);

    JordanFrameSample out;
    out.s = s;
    out.frame.assign(gs.frame.begin(), gs.frame.begin() + (j + 1));
    for (int m = 1; m <= j; ++m) {
        out.curvatures.push_back(gs.residual_norms[m] / gs.residual_norms[m - 1]);
    }
    if (j < N) {
        out.k_next = gs.residual_norms[j + 1] / gs.residual_norms[j];
        out.speed_nj = std::hypot(out.curvatures.back(), out.k_next);
    } else {
        out.speed_nj = std::abs(out.curvatures.back());
    }
    return out;
}

UnitVec hodge_last_normal(const CurveOracle& c, double s, double tol) {
    const int N = c.dim() - 1;
    const JordanFrameSample f = jordan_frame(c, s, N, tol);
    std::vector<Vec> basis;
    basis.reserve(N);
    for (int m = 0; m < N; ++m) basis.push_back(f.frame[m].vec());
    return orthogonal_complement_direction(basis);
}

double signed_last_curvature(const CurveOracle& c, double s, double tol) {
    const int N = c.dim() - 1;
    const UnitVec nN = hodge_last_normal(c, s, tol);
    const GsLadder gs = derivative_ladder(c, s, N, N, tol);
    // k_N = (c^{(N+1)} . n_N) / ||residual of c^{(N)}||
    return c.deriv(s, N + 1).dot(nN.vec()) / gs.residual_norms.back();
}

double signed_torsion_r3(const CurveOracle& c, double s) {
    if (c.dim() != 3) throw DimensionMismatch("signed torsion needs ambient dimension 3");
    const Vec d1 = c.deriv(s, 1), d2 = c.deriv(s, 2), d3 = c.deriv(s, 3);
    Vec cr(3);
    cr << d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
        d1[0] * d2[1] - d1[1] * d2[0];
    const double denom = d2.squaredNorm();
    if (denom <= 0.0) throw NotSmoothlyTurning(s);
    return cr.dot(d3) / denom;
}

namespace {

// ||dot n_j|| as an integrand: zero where the curve is numerically straight
// (all its bending underflowed), otherwise the Jordan-frame speed.
double speed_or_zero(const CurveOracle& c, double s, int j, double tol) {
    try {
        return jordan_frame(c, s, j, tol).speed_nj;
    } catch (const NotSmoothlyTurning&) {
        if (c.deriv(s, 2).norm() < 1e-30) return 0.0;
        throw;
    }
}

}  // namespace

double smooth_nj_length(const CurveOracle& c, int j, const QuadratureOptions& quad) {
    QuadratureOptions opts = quad;
    for (double s : c.singular_params()) opts.split_points.push_back(s);
    return integrate([&](double s) { return speed_or_zero(c, s, j, 1e-8); }, c.domain_start(),
                     c.domain_end(), opts);
}

TransitionFunction::TransitionFunction(CurvePtr c, int j, int cells)
    : curve_(std::move(c)), j_(j) {
    const double a = curve_->domain_start();
    const double b = curve_->domain_end();
    std::vector<double> cuts = {a, b};
    for (double s : curve_->singular_params()) {
        if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());

    s_nodes_.push_back(a);
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const int n = std::max(8, static_cast<int>(cells * (cuts[seg + 1] - cuts[seg]) / (b - a)));
        for (int i = 1; i <= n; ++i) {
            s_nodes_.push_back(cuts[seg] + (cuts[seg + 1] - cuts[seg]) * i / n);
        }
    }
    phi_nodes_.resize(s_nodes_.size(), 0.0);
    speed_nodes_.resize(s_nodes_.size(), 0.0);
    for (std::size_t i = 0; i < s_nodes_.size(); ++i) {
        // singular nodes: take the speed limit from inside the cell
        double s = s_nodes_[i];
        const double nudge = 1e-12 * (b - a);
        if (i == 0)
            s += nudge;
        else if (i + 1 == s_nodes_.size())
            s -= nudge;
        else {
            for (double cut : cuts) {
                if (std::abs(s - cut) < 1e-15 * (1 + std::abs(cut))) {
                    s += nudge;
                    break;
                }
            }
        }
        speed_nodes_[i] = speed_or_zero(*curve_, s, j_, 1e-8);
    }
    for (std::size_t i = 1; i < s_nodes_.size(); ++i) {
        phi_nodes_[i] =
            phi_nodes_[i - 1] + integrate([&](double s) { return speed_or_zero(*curve_, s, j_, 1e-8); },
                                          s_nodes_[i - 1], s_nodes_[i], {1e-12, 1e-15, 20, {}});
    }
    if (total() <= kSegTol) throw NotInvertible();
}

double TransitionFunction::phi(double s) const {
    const auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
    int i = static_cast<int>(it - s_nodes_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(s_nodes_.size()) - 2);
    const double h = s_nodes_[i + 1] - s_nodes_[i];
    const double t = (s - s_nodes_[i]) / h;
    // Hermite cubic with exact derivatives (the node speeds).
    const double p0 = phi_nodes_[i], p1 = phi_nodes_[i + 1];
    const double m0 = h * speed_nodes_[i], m1 = h * speed_nodes_[i + 1];
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
           (t3 - t2) * m1;
}

double TransitionFunction::psi(double t) const {
    t = std::clamp(t, 0.0, total());
    const auto it = std::upper_bound(phi_nodes_.begin(), phi_nodes_.end(), t);
    int i = static_cast<int>(it - phi_nodes_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(phi_nodes_.size()) - 2);
    double lo = s_nodes_[i], hi = s_nodes_[i + 1];
    double s = 0.5 * (lo + hi);
    for (int iter = 0; iter < 80; ++iter) {
        const double g = phi(s) - t;
        if (g > 0)
            hi = s;
        else
            lo = s;
        const double sp = (phi(hi) - phi(lo)) / (hi - lo + 1e-300);
        if (sp > 1e-14) {
            const double newton = s - g / sp;
            s = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
        } else {
            s = 0.5 * (lo + hi);
        }
        if (hi - lo < 1e-15 * (1.0 + std::abs(hi))) break;
    }
    return s;
}

OsculatingSpace osculating_space(const CurveOracle& c, double s, int j, double tol) {
    const int N = c.dim() - 1;
    if (j < 1 || j > N) throw InvalidOrder(j);
    OsculatingSpace out{{}, {}, ProjPoint(Vec(Vec::Unit(c.dim(), 0)))};
    out.basis.push_back(UnitVec(c.deriv(s, 1)));
    for (int k = 2; k <= c.max_order() && static_cast<int>(out.basis.size()) < j + 1; ++k) {
        const Vec d = c.deriv(s, k);
        const Vec r = orthonormal_residual(d, out.basis);
        if (r.norm() > tol * std::max(d.norm(), 1e-300) && r.norm() > 1e-300) {
            out.derivative_indices.push_back(k);
            out.basis.push_back(UnitVec(r / r.norm()));
        }
    }
    if (static_cast<int>(out.basis.size()) < j + 1) throw NotMildlyTurning(s);
    out.normal = ProjPoint(out.basis.back());
    return out;
}

}  // namespace jnormals
