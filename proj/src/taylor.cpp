#include "jnormals/taylor.hpp"

#include <cmath>

#include "jnormals/jordan.hpp"

namespace jnormals {

namespace {

constexpr double kResidualFloor = 1e-13;  // cancellation floor in the fits

Vec aligned(const UnitVec& measured, const Vec& reference) {
    return measured.vec().dot(reference) >= 0.0 ? measured.vec() : Vec(-measured.vec());
}

OrderFitReport make_report(std::string quantity, const std::vector<double>& steps,
                           std::vector<double> residuals, double threshold) {
    OrderFitReport rep;
    rep.quantity = std::move(quantity);
    rep.steps = steps;
    rep.residuals = std::move(residuals);
    rep.threshold = threshold;
    rep.fitted_slope = fit_loglog_slope(rep.steps, rep.residuals);
    rep.passed = rep.fitted_slope >= threshold;
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
        if (rep.residuals[i] > rep.residuals[i - 1] * 1.0000001 &&
            rep.residuals[i] > kResidualFloor) {
            rep.monotone = false;
        }
    }
    return rep;
}

}  // namespace

double fit_loglog_slope(const std::vector<double>& steps, const std::vector<double>& residuals) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (residuals[i] > kResidualFloor) {
            xs.push_back(std::log(steps[i]));
            ys.push_back(std::log(residuals[i]));
        }
    }
    if (xs.size() < 2) return 99.0;  // everything at the floor: faster than measurable
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

std::vector<Vec> stencil_vectors(const CurveOracle& c, double s, double h, int codim) {
    if (h <= 0) throw BadParams("stencil step must be positive");
    const double lo = s - (codim + 2) * h;
    const double hi = s + (codim + 1) * h;
    if (!c.closed() && (lo < c.domain_start() || hi > c.domain_end())) throw OutOfDomain(s);
    std::vector<Vec> out;
    out.reserve(codim + 1);
    for (int k = 0; k <= codim; ++k) {
        if (k % 2 == 0) {
            out.push_back((c.eval(s + (k + 1) * h) - c.eval(s + (k - 1) * h)) / (2.0 * h));
        } else {
            out.push_back((c.eval(s - (k + 2) * h) - c.eval(s - k * h)) / (2.0 * h));
        }
    }
    return out;
}

StencilFrame stencil_frame(const CurveOracle& c, double s, double h, int codim) {
    StencilFrame f;
    f.h = h;
    // The k-th stencil residual scales like h^k: a relative rank threshold at
    // the double-precision floor keeps legitimately tiny residuals alive.
    f.frame = gram_schmidt(stencil_vectors(c, s, h, codim), 1e-14);
    return f;
}

std::vector<double> default_steps(const CurveOracle& c) {
    const double base = c.period() / 32.0;
    std::vector<double> out;
    for (int k = 3; k <= 10; ++k) out.push_back(base * std::pow(2.0, -k));
    return out;
}

std::vector<OrderFitReport> verify_pgm3(const CurveOracle& c, double s,
                                        const std::vector<double>& steps) {
    const Vec d1 = c.deriv(s, 1), d2 = c.deriv(s, 2), d3 = c.deriv(s, 3);
    const double k1 = d2.norm();
    if (k1 <= 1e-8) throw NotSmoothlyTurning(s);
    const Vec n1 = d2 / k1;
    const Vec c3perp = d3 - d3.dot(d1) * d1 - (d3.dot(d2) / d2.squaredNorm()) * d2;
    if (c3perp.norm() <= 1e-8) throw NotSmoothlyTurning(s);
    const Vec n2 = c3perp / c3perp.norm();
    const Vec u1 = -k1 * d1 + (d3.dot(d2) / std::pow(k1, 3)) * d2 - d3 / k1;

    std::vector<double> used_steps;
    std::vector<double> r_t, r_n1big, r_n1, r_n2big, r_n2;
    for (double h : steps) {
        const std::vector<Vec> v = stencil_vectors(c, s, h, 2);
        StencilFrame f;
        try {
            f = stencil_frame(c, s, h, 2);
        } catch (const RankDeficient&) {
            continue;  // below the cancellation floor at this step
        }
        used_steps.push_back(h);
        const Vec t_h = aligned(f.frame[0], d1);
        const Vec n1_h = aligned(f.frame[1], n1);
        const Vec n2_h = aligned(f.frame[2], n2);
        // raw (un-normalized) orthogonalization residues as in the expansion
        const Vec N1 = v[1] - (v[1].dot(v[0]) / v[0].squaredNorm()) * v[0];
        const Vec nn1 = N1 / N1.norm();
        const Vec N2 = v[2] - (v[2].dot(v[0]) / v[0].squaredNorm()) * v[0] - v[2].dot(nn1) * nn1;
        r_t.push_back((t_h - (d1 + (d2.squaredNorm() * d1 + d3) * h * h / 6.0)).norm());
        r_n1big.push_back((N1 - (2.0 * d2 * h - 2.0 * (d2.squaredNorm() * d1 + d3) * h * h)).norm());
        r_n1.push_back((n1_h - (n1 + u1 * h)).norm());
        r_n2big.push_back((N2 - 4.0 * c3perp * h * h).norm());
        r_n2.push_back((n2_h - n2).norm());
    }
    if (used_steps.size() < 3) throw NotSmoothlyTurning(s);
    return {make_report("t(h) through h^2", used_steps, r_t, 2.2),
            make_report("N_1(h) through h^2", used_steps, r_n1big, 2.2),
            make_report("n_1(h) through h", used_steps, r_n1, 1.2),
            make_report("N_2(h) through h^2", used_steps, r_n2big, 2.2),
            make_report("n_2(h) through h^0", used_steps, r_n2, 0.8)};
}

std::vector<OrderFitReport> verify_pgm4(const CurveOracle& c, double s,
                                        const std::vector<double>& steps) {
    if (c.dim() != 4) throw DimensionMismatch("codimension-3 expansions need ambient dimension 4");
    const Vec d1 = c.deriv(s, 1), d2 = c.deriv(s, 2), d3 = c.deriv(s, 3), d4 = c.deriv(s, 4);
    const double k1 = d2.norm();
    if (k1 <= 1e-8) throw NotSmoothlyTurning(s);
    const Vec t = d1;
    const Vec n1 = d2 / k1;
    const Vec c3perp = d3 - d3.dot(t) * t - d3.dot(n1) * n1;
    if (c3perp.norm() <= 1e-8) throw NotSmoothlyTurning(s);
    const Vec n2 = c3perp / c3perp.norm();
    const Vec c4perp = d4 - d4.dot(t) * t - d4.dot(n1) * n1 - d4.dot(n2) * n2;
    if (c4perp.norm() <= 1e-8) throw NotSmoothlyTurning(s);
    const Vec n3 = c4perp / c4perp.norm();

    const double dot32 = d3.dot(d2);
    const Vec u1 = -k1 * d1 + (dot32 / std::pow(k1, 3)) * d2 - d3 / k1;
    const double omega = (dot32 * dot32 / std::pow(k1, 4)) * (1.5 * k1 * k1 - 1.0) +
                         0.5 * k1 * k1 - 0.5 * d3.squaredNorm() / (k1 * k1);
    const Vec dvec = -(dot32 / (6.0 * k1)) * t + omega * n1 +
                     ((5.0 / 6.0) * d4.dot(c3perp) / (k1 * c3perp.norm()) -
                      (dot32 / std::pow(k1, 3)) * c3perp.norm()) *
                         n2 +
                     (5.0 / 6.0) * (c4perp.norm() / k1) * n3;
    const Vec Dvec = (d3.squaredNorm() / k1 - std::pow(k1, 3) - dot32 * dot32 / std::pow(k1, 3)) * n1 +
                     (dot32 / (k1 * k1 * c3perp.norm())) * n2;

    std::vector<double> used_steps;
    std::vector<double> r_t, r_n1, r_n2, r_n3;
    for (double h : steps) {
        StencilFrame f;
        try {
            f = stencil_frame(c, s, h, 3);
        } catch (const RankDeficient&) {
            continue;
        }
        used_steps.push_back(h);
        const Vec t_h = aligned(f.frame[0], t);
        const Vec n1_h = aligned(f.frame[1], n1);
        const Vec n2_h = aligned(f.frame[2], n2);
        const Vec n3_h = aligned(f.frame[3], n3);
        r_t.push_back((t_h - (t + (k1 * k1 * t + d3) * h * h / 6.0)).norm());
        r_n1.push_back((n1_h - (n1 + u1 * h + dvec * h * h)).norm());
        r_n2.push_back((n2_h - (n2 + (Dvec / c3perp.norm()) * h)).norm());
        r_n3.push_back((n3_h - n3).norm());
    }
    if (used_steps.size() < 3) throw NotSmoothlyTurning(s);
    return {make_report("t(h) through h^2 (o(h^3))", used_steps, r_t, 2.8),
            make_report("n_1(h) through h^2", used_steps, r_n1, 2.2),
            make_report("n_2(h) through h", used_steps, r_n2, 1.2),
            make_report("n_3(h) through h^0 (o(h))", used_steps, r_n3, 1.2)};
}

std::vector<OrderFitReport> verify_pgmn(const CurveOracle& c, double s, int j_max,
                                        const std::vector<double>& steps) {
    const int N = c.dim() - 1;
    if (j_max < 1 || j_max > N) throw InvalidOrder(j_max);
    const JordanFrameSample jf = jordan_frame(c, s, j_max);
    std::vector<double> used_steps;
    std::vector<std::vector<double>> residuals(j_max + 1);
    for (double h : steps) {
        StencilFrame f;
        try {
            f = stencil_frame(c, s, h, N);
        } catch (const RankDeficient&) {
            continue;
        }
        used_steps.push_back(h);
        for (int j = 0; j <= j_max; ++j) {
            residuals[j].push_back(
                rp_distance(ProjPoint(f.frame[j].vec()), ProjPoint(jf.frame[j].vec())));
        }
    }
    if (used_steps.size() < 3) throw NotSmoothlyTurning(s);
    std::vector<OrderFitReport> out;
    for (int j = 0; j <= j_max; ++j) {
        const std::string q = (j == 0) ? "t(h) -> t" : "n_" + std::to_string(j) + "(h) projective";
        out.push_back(make_report(q, used_steps, residuals[j], 0.8));
    }
    return out;
}

}  // namespace jnormals
