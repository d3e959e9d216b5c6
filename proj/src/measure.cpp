#include "jnormals/measure.hpp"

#include <algorithm>
#include <cmath>

#include "jnormals/polyline.hpp"

namespace jnormals {

namespace {

std::vector<ProjPoint> collapse(const std::vector<ProjPoint>& points, bool closed) {
    std::vector<ProjPoint> q;
    for (const ProjPoint& p : points) {
        if (q.empty() || rp_distance(q.back(), p) > kCollapseTol) q.push_back(p);
    }
    while (closed && q.size() > 1 && rp_distance(q.front(), q.back()) <= kCollapseTol) q.pop_back();
    return q;
}

// Unit velocity of the j-th normal, dot n_j / ||dot n_j||, in the
// Gram-Schmidt orientation of the frame.
Vec normal_velocity_unit(const CurveOracle& c, double s, int j) {
    const int N = c.dim() - 1;
    const JordanFrameSample f = jordan_frame(c, s, j);
    if (f.speed_nj <= 1e-14) throw NotSmoothlyTurning(s);
    if (j == N) {
        return -f.frame[N - 1].vec();
    }
    Vec v = -f.curvatures.back() * f.frame[j - 1].vec();
    if (f.k_next > 1e-14) {
        // n_{j+1} from one more orthogonalization step
        std::vector<UnitVec> frame = f.frame;
        const Vec d = c.deriv(s, j + 2);
        const Vec r = orthonormal_residual(d, frame);
        if (r.norm() > 1e-300) v += f.k_next * (r / r.norm());
    }
    return v / f.speed_nj;
}

}  // namespace

MeasureReport polygonal_jump_measure(const DiscreteNormal& dn, bool closed) {
    const std::vector<ProjPoint> q = collapse(dn.points, closed);
    const int m = static_cast<int>(q.size());
    MeasureReport rep;
    if (m <= 1) return rep;
    const int arcs = closed ? m : m - 1;
    std::vector<double> cum(arcs + 1, 0.0);
    for (int i = 0; i < arcs; ++i) cum[i + 1] = cum[i] + rp_distance(q[i], q[(i + 1) % m]);
    rep.length = cum.back();

    const int j0 = closed ? 0 : 1;
    const int j1 = closed ? m : m - 1;
    for (int i = j0; i < j1; ++i) {
        const UnitVec& b = q[i].rep();
        const UnitVec a = lift_towards(b, q[(i - 1 + m) % m]);
        const UnitVec c = lift_towards(b, q[(i + 1) % m]);
        const double angle = turning_angle(a, b, c);
        Vec tin = b.vec() * a.dot(b) - a.vec();
        Vec tout = c.vec() - b.vec() * c.dot(b);
        tin /= tin.norm();
        tout /= tout.norm();
        MeasureAtom atom;
        atom.t = cum[i];  // junction i sits at the end of arc i-1
        atom.jump = tout - tin;
        atom.mass = angle;
        rep.atoms.push_back(atom);
    }
    double atom_sum = 0.0;
    for (const MeasureAtom& a : rep.atoms) atom_sum += a.mass;
    rep.total_variation = rep.length + atom_sum;
    return rep;
}

MeasureReport smooth_density(CurvePtr c, int j, int grid) {
    const double a = c->domain_start(), b = c->domain_end();
    const double h = 1e-5 * (b - a);
    // probe the frame away from declared singular points so fully degenerate
    // curves surface as NotSmoothlyTurning rather than a zero-speed error
    {
        double probe = a + 0.37 * (b - a);
        for (double sing : c->singular_params()) {
            if (std::abs(probe - sing) < 0.05 * (b - a)) probe = a + 0.59 * (b - a);
        }
        (void)jordan_frame(*c, probe, j);
    }
    const TransitionFunction tf(c, j);
    MeasureReport rep;
    rep.length = tf.total();
    double prev_norm = 0.0;
    double prev_s = 0.0;
    bool have_prev = false;
    for (int g = 0; g < grid; ++g) {
        const double s = a + (b - a) * (g + 0.5) / grid;
        bool near_singular = false;
        for (double sing : c->singular_params()) {
            if (std::abs(s - sing) < 2.0 * h) near_singular = true;
        }
        if (near_singular) continue;
        try {
            const Vec up = normal_velocity_unit(*c, s + h, j);
            const Vec um = normal_velocity_unit(*c, s - h, j);
            DensitySample sample;
            sample.s = s;
            sample.t = tf.phi(s);
            sample.density = (up - um) / (2.0 * h);
            rep.ac_density_samples.push_back(sample);
            if (have_prev) {
                rep.total_variation +=
                    0.5 * (prev_norm + sample.density.norm()) * (s - prev_s);
            }
            prev_norm = sample.density.norm();
            prev_s = s;
            have_prev = true;
        } catch (const NotSmoothlyTurning&) {
            have_prev = false;
        }
    }
    return rep;
}

TangentialCheck tangential_component_check(CurvePtr c, int grid) {
    if (c->dim() != 3) throw DimensionMismatch("tangential check needs ambient dimension 3");
    const int N = 2;
    const double a = c->domain_start(), b = c->domain_end();
    const double h = 1e-5 * (b - a);
    TangentialCheck out;
    // unit velocity of the last normal in the Hodge orientation:
    // dot n_N = -tau n_{N-1}, so the unit velocity is -sgn(tau) n_{N-1}
    const auto u_of = [&](double at) {
        const JordanFrameSample f = jordan_frame(*c, at, N);
        const double tau = signed_last_curvature(*c, at);
        return Vec(-(tau > 0 ? 1.0 : -1.0) * f.frame[N - 1].vec());
    };
    for (int g = 0; g < grid; ++g) {
        const double s = a + (b - a) * (g + 0.5) / grid;
        const double tau = signed_last_curvature(*c, s);
        if (std::abs(tau) <= 1e-10) throw NotSmoothlyTurning(s);
        const double sgn = tau > 0 ? 1.0 : -1.0;
        if (out.samples == 0) out.torsion_sign = sgn;

        const Vec density = (u_of(s + h) - u_of(s - h)) / (2.0 * h);
        const UnitVec gamma = hodge_last_normal(*c, s);
        const Vec tangential = density - density.dot(gamma.vec()) * gamma.vec();
        const JordanFrameSample f = jordan_frame(*c, s, N);
        const Vec expected = sgn * f.curvatures[0] * f.frame[0].vec();
        out.max_error = std::max(out.max_error, (tangential - expected).norm());
        ++out.samples;
    }
    return out;
}

std::vector<MeasureBins> convergence_of_measures(CurvePtr c, int j,
                                                 const std::vector<int>& schedule, int bins) {
    // smooth side: accumulate || d/ds u || ds into fraction bins of phi/L
    const TransitionFunction tf(c, j);
    const double a = c->domain_start(), b = c->domain_end();
    const double h = 1e-5 * (b - a);
    std::vector<double> smooth_mass(bins, 0.0);
    const int sgrid = 16 * bins;
    for (int g = 0; g < sgrid; ++g) {
        const double s = a + (b - a) * (g + 0.5) / sgrid;
        bool near_singular = false;
        for (double sing : c->singular_params()) {
            if (std::abs(s - sing) < 2.0 * h) near_singular = true;
        }
        if (near_singular) continue;
        try {
            const Vec up = normal_velocity_unit(*c, s + h, j);
            const Vec um = normal_velocity_unit(*c, s - h, j);
            const double dens = ((up - um) / (2.0 * h)).norm();
            const double frac = tf.phi(s) / tf.total();
            const int bin = std::clamp(static_cast<int>(frac * bins), 0, bins - 1);
            smooth_mass[bin] += dens * (b - a) / sgrid;
        } catch (const NotSmoothlyTurning&) {
            continue;
        }
    }
    double total = 0.0;
    for (double m : smooth_mass) total += m;

    std::vector<MeasureBins> out;
    for (int n : schedule) {
        const InscribedPolygonal ins = inscribe_uniform(c, n);
        const DiscreteNormal dn = discrete_normal(ins.polygonal(), j);
        const MeasureReport jm = polygonal_jump_measure(dn, c->closed());
        MeasureBins mb;
        mb.n = n;
        mb.total_mass = total;
        mb.smooth_mass = smooth_mass;
        mb.discrete_mass.assign(bins, 0.0);
        const double L = jm.length;
        if (L <= 0.0) {
            out.push_back(mb);
            continue;
        }
        // atoms
        for (const MeasureAtom& atom : jm.atoms) {
            const int bin = std::clamp(static_cast<int>(atom.t / L * bins), 0, bins - 1);
            mb.discrete_mass[bin] += atom.mass;
        }
        // arc-interior contribution: spread each arc's length over its bins
        const std::vector<ProjPoint> q = collapse(dn.points, c->closed());
        const int m = static_cast<int>(q.size());
        const int arcs = c->closed() ? m : m - 1;
        double cumpos = 0.0;
        for (int i = 0; i < arcs; ++i) {
            const double len = rp_distance(q[i], q[(i + 1) % m]);
            double lo = cumpos, hi = cumpos + len;
            cumpos = hi;
            int b0 = std::clamp(static_cast<int>(lo / L * bins), 0, bins - 1);
            int b1 = std::clamp(static_cast<int>(hi / L * bins), 0, bins - 1);
            for (int bb = b0; bb <= b1; ++bb) {
                const double bin_lo = L * bb / bins, bin_hi = L * (bb + 1) / bins;
                const double overlap = std::min(hi, bin_hi) - std::max(lo, bin_lo);
                if (overlap > 0) mb.discrete_mass[bb] += overlap;
            }
        }
        for (int bb = 0; bb < bins; ++bb) {
            mb.max_discrepancy =
                std::max(mb.max_discrepancy, std::abs(mb.discrete_mass[bb] - mb.smooth_mass[bb]));
        }
        out.push_back(mb);
    }
    return out;
}

}  // namespace jnormals
