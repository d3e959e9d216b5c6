#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>

#include "jnormals/jordan.hpp"
#include "jnormals/polyline.hpp"

using namespace jnormals;
using std::numbers::pi;

namespace {

constexpr double kHelixA = 1.0, kHelixB = 0.5;

double helix_k1() { return kHelixA / (kHelixA * kHelixA + kHelixB * kHelixB); }
double helix_k2() { return kHelixB / (kHelixA * kHelixA + kHelixB * kHelixB); }

}  // namespace

TEST_CASE("builtin registry") {
    CHECK_THROWS_AS((void)builtin_curve("torus_knot"), UnknownCurve);
    CHECK_THROWS_AS((void)builtin_curve("circle", {{"r", -1.0}}), BadParams);
    CHECK_THROWS_AS((void)builtin_curve("eflex", {{"half_width", 1.5}}), BadParams);
}

TEST_CASE("arc-length parameterization of the builtins") {
    for (const char* name : {"line", "circle", "helix_r3", "generalized_helix_r4",
                             "generalized_helix_r5", "eflex", "eflat"}) {
        const CurvePtr c = builtin_curve(name);
        REQUIRE(c->arc_length_parameterized());
        const double a = c->domain_start(), b = c->domain_end();
        for (int i = 0; i < 1001; ++i) {
            const double s = a + (b - a) * (i + 0.5) / 1002;
            CHECK(std::abs(c->deriv(s, 1).norm() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("derivatives are consistent with finite differences of lower orders") {
    for (const char* name : {"circle", "helix_r3", "generalized_helix_r4", "eflex"}) {
        const CurvePtr c = builtin_curve(name);
        const double a = c->domain_start(), b = c->domain_end();
        const double h = 1e-5;
        const int kmax = std::min(3, c->max_order());
        for (int i = 1; i <= 7; ++i) {
            const double s = a + (b - a) * i / 8.0;
            bool skip = false;
            for (double sing : c->singular_params()) {
                if (std::abs(s - sing) < 0.05) skip = true;
            }
            if (skip) continue;
            for (int k = 2; k <= kmax; ++k) {
                const Vec fd = (c->deriv(s + h, k - 1) - c->deriv(s - h, k - 1)) / (2.0 * h);
                const Vec an = c->deriv(s, k);
                CHECK((fd - an).norm() <= 1e-6 * (1.0 + an.norm()));
            }
        }
    }
}

TEST_CASE("unit circle curvature") {
    const CurvePtr c = builtin_curve("circle", {{"r", 1.0}});
    const Vec d2 = c->deriv(0.3, 2);
    Vec expect(3);
    expect << -std::cos(0.3), -std::sin(0.3), 0.0;
    CHECK((d2 - expect).norm() < 1e-12);
    const JordanFrameSample f = jordan_frame(*c, 0.3, 1);
    CHECK(f.curvatures[0] == doctest::Approx(1.0));
}

TEST_CASE("circle of radius 2: k_1 = 1/2 and no second-order frame") {
    const CurvePtr c = builtin_curve("circle", {{"r", 2.0}});
    const JordanFrameSample f = jordan_frame(*c, 1.0, 1);
    CHECK(f.curvatures[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)jordan_frame(*c, 1.0, 2), NotSmoothlyTurning);
}

TEST_CASE("line admits no first normal") {
    const CurvePtr c = builtin_curve("line");
    CHECK_THROWS_AS((void)jordan_frame(*c, 0.5, 1), NotSmoothlyTurning);
}

TEST_CASE("helix frame and curvatures are constant") {
    const CurvePtr c = builtin_curve("helix_r3", {{"a", kHelixA}, {"b", kHelixB}});
    for (double s : {0.1, 1.0, 3.0, 6.0}) {
        const JordanFrameSample f = jordan_frame(*c, s, 2);
        CHECK(f.curvatures[0] == doctest::Approx(helix_k1()).epsilon(1e-12));
        CHECK(f.curvatures[1] == doctest::Approx(helix_k2()).epsilon(1e-12));
        CHECK(f.speed_nj == doctest::Approx(helix_k2()).epsilon(1e-12));
        const JordanFrameSample f1 = jordan_frame(*c, s, 1);
        CHECK(f1.speed_nj ==
              doctest::Approx(std::hypot(helix_k1(), helix_k2())).epsilon(1e-12));
    }
}

TEST_CASE("eflex curvature and torsion match the closed forms") {
    const CurvePtr c = builtin_curve("eflex");
    const double s = 0.5;
    const JordanFrameSample f = jordan_frame(*c, s, 1);
    const double expect_k = std::numbers::sqrt2 * 0.5 / std::sqrt(1.0 - 0.0625);
    CHECK(f.curvatures[0] == doctest::Approx(expect_k).epsilon(1e-12));
    CHECK(expect_k == doctest::Approx(0.7302967433402214).epsilon(1e-12));
    CHECK(signed_torsion_r3(*c, s) == doctest::Approx(-expect_k).epsilon(1e-10));
    CHECK(signed_torsion_r3(*c, -s) == doctest::Approx(expect_k).epsilon(1e-10));
}

TEST_CASE("jordan system residual by finite differences") {
    // FSN check: dot n_m = -k_m n_{m-1} + k_{m+1} n_{m+1} at 101 points
    for (const char* name : {"helix_r3", "generalized_helix_r5"}) {
        const CurvePtr c = builtin_curve(name);
        const int N = c->dim() - 1;
        const double a = c->domain_start(), b = c->domain_end();
        const double h = 1e-6 * (b - a);
        for (int i = 0; i < 101; ++i) {
            const double s = a + (b - a) * (i + 1) / 102.0;
            const JordanFrameSample f = jordan_frame(*c, s, N);
            CHECK(std::abs(f.curvatures[N - 1]) > 0.0);  // last curvature non-zero
            const JordanFrameSample fp = jordan_frame(*c, s + h, N);
            const JordanFrameSample fm = jordan_frame(*c, s - h, N);
            for (int m = 1; m <= N; ++m) {
                const Vec fd = (fp.frame[m].vec() - fm.frame[m].vec()) / (2.0 * h);
                Vec expect = -f.curvatures[m - 1] * f.frame[m - 1].vec();
                if (m < N) expect += f.curvatures[m] * f.frame[m + 1].vec();
                CHECK((fd - expect).norm() < 1e-5);
            }
        }
    }
}

TEST_CASE("smooth normal lengths: circle, helix, planar order") {
    const CurvePtr circle = builtin_curve("circle", {{"r", 1.0}});
    CHECK(smooth_nj_length(*circle, 1) == doctest::Approx(2 * pi).epsilon(1e-8));

    const CurvePtr helix = builtin_curve("helix_r3", {{"a", kHelixA}, {"b", kHelixB}});
    const double len = helix->period();
    CHECK(smooth_nj_length(*helix, 2) == doctest::Approx(helix_k2() * len).epsilon(1e-8));
    CHECK(smooth_nj_length(*helix, 1) ==
          doctest::Approx(std::hypot(helix_k1(), helix_k2()) * len).epsilon(1e-8));

    // planar curve in R^3 has no smoothly-turning order-2 frame anywhere
    CHECK_THROWS_AS((void)smooth_nj_length(*circle, 2), NotSmoothlyTurning);
}

TEST_CASE("transition functions of constant-speed normals") {
    const CurvePtr circle = builtin_curve("circle", {{"r", 1.0}});
    const TransitionFunction tf(circle, 1);
    CHECK(tf.total() == doctest::Approx(2 * pi).epsilon(1e-9));
    for (double s : {0.3, 2.0, 5.5}) {
        CHECK(tf.phi(s) == doctest::Approx(s).epsilon(1e-9));
        CHECK(tf.psi(tf.phi(s)) == doctest::Approx(s).epsilon(1e-8));
    }
    const CurvePtr helix = builtin_curve("helix_r3", {{"a", kHelixA}, {"b", kHelixB}});
    const TransitionFunction tf2(helix, 2);
    for (double s : {0.5, 3.0, 6.5}) {
        CHECK(tf2.phi(s) == doctest::Approx(helix_k2() * s).epsilon(1e-9));
        CHECK(std::abs(tf2.psi(tf2.phi(s)) - s) < 1e-8 * helix->period());
    }
    // zero-speed normal has no inverse
    const CurvePtr line = builtin_curve("line");
    CHECK_THROWS_AS(TransitionFunction(line, 1), NotInvertible);
}

TEST_CASE("eflex osculating space at the inflection") {
    const CurvePtr c = builtin_curve("eflex");
    const OsculatingSpace osc = osculating_space(*c, 0.0, 1);
    // c'' vanishes at 0: the space is spanned by c' and c'''
    REQUIRE(osc.derivative_indices.size() == 1);
    CHECK(osc.derivative_indices[0] == 3);
    Vec n0(3), b0(3);
    n0 << 0, 1, 0;
    b0 << -1, 0, 1;
    CHECK(rp_distance(osc.normal, ProjPoint(n0)) < 1e-9);
    // the binormal class at 0 via the complement of the osculating plane
    std::vector<Vec> basis;
    for (const UnitVec& u : osc.basis) basis.push_back(u.vec());
    const UnitVec b = orthogonal_complement_direction(basis);
    CHECK(rp_distance(ProjPoint(b), ProjPoint(Vec(b0 / b0.norm()))) < 1e-7);
}

TEST_CASE("osculating space coincides with the jordan frame at smooth points") {
    const CurvePtr c = builtin_curve("helix_r3");
    const OsculatingSpace osc = osculating_space(*c, 1.0, 2);
    CHECK(osc.derivative_indices == std::vector<int>{2, 3});
    const JordanFrameSample f = jordan_frame(*c, 1.0, 2);
    CHECK(rp_distance(osc.normal, ProjPoint(f.frame[2])) < 1e-10);
}

TEST_CASE("projective continuity across the eflex inflection, sphere-level flip") {
    const CurvePtr c = builtin_curve("eflex");
    for (double s : {1e-3, 1e-2}) {
        const JordanFrameSample fp = jordan_frame(*c, s, 1);
        const JordanFrameSample fm = jordan_frame(*c, -s, 1);
        CHECK(rp_distance(ProjPoint(fp.frame[1]), ProjPoint(fm.frame[1])) <= s);
        CHECK(sphere_distance(fp.frame[1], fm.frame[1]) > pi - 10 * s);
        // normalized normal velocity flips too (jump formula analogue)
        const double flip = fp.frame[1].dot(fm.frame[1]);
        CHECK(flip < 0.0);
    }
}

TEST_CASE("eflat: projective jump of pi/2 exactly at the junction") {
    const CurvePtr c = builtin_curve("eflat");
    // The junction is surrounded by a zone where every derivative underflows
    // and no osculating plane exists numerically. Scan the normal where it is
    // defined; the one jump must bridge the junction gap.
    const double delta = 0.02;
    std::optional<ProjPoint> prev;
    double prev_s = 0.0;
    int fired_at_junction = 0, fired_elsewhere = 0;
    for (double s = c->domain_start() + 0.05; s < c->domain_end() - 0.05; s += delta) {
        ProjPoint cur{Vec(Vec::Unit(3, 0))};
        try {
            cur = osculating_space(*c, s, 1).normal;
        } catch (const NotMildlyTurning&) {
            continue;  // inside the numerically flat zone
        }
        if (prev && rp_distance(*prev, cur) > 0.5) {
            if (prev_s < 0.0 && s > 0.0) {
                ++fired_at_junction;
            } else {
                ++fired_elsewhere;
            }
        }
        prev = cur;
        prev_s = s;
    }
    CHECK(fired_at_junction == 1);
    CHECK(fired_elsewhere == 0);
    // the jump angle is pi/2
    const ProjPoint before = osculating_space(*c, -0.3, 1).normal;
    const ProjPoint after = osculating_space(*c, 0.3, 1).normal;
    CHECK(rp_distance(before, after) == doctest::Approx(pi / 2).epsilon(1e-3));
}

TEST_CASE("eflex osculating plane projector varies continuously across zero") {
    const CurvePtr c = builtin_curve("eflex");
    const auto projector = [&](double s) {
        const OsculatingSpace osc = osculating_space(*c, s, 1);
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
        for (const UnitVec& u : osc.basis) p += u.vec() * u.vec().transpose();
        return p;
    };
    double worst = 0.0;
    for (double s = -0.2; s < 0.2; s += 0.01) {
        worst = std::max(worst, (projector(s + 0.01) - projector(s)).norm());
    }
    CHECK(worst < 0.1);  // no jump in the osculating plane itself
}

TEST_CASE("spiral has finite length and unbounded inscribed total curvature") {
    const CurvePtr c = builtin_curve("spiral_infinite_tc");
    const double quad_len = integrate(
        [&](double t) { return c->deriv(t, 1).norm(); }, 1e-9, 1.0, {1e-10, 1e-14, 48, {}});
    const double exact = std::sqrt(1 + pi * pi) + pi * pi * std::log((1 + std::sqrt(1 + pi * pi)) / pi);
    CHECK(quad_len == doctest::Approx(exact).epsilon(1e-8));
    double prev_tc = 0.0;
    for (int n : {100, 400, 1000}) {
        const Polygonal p = inscribe_uniform(c, n).polygonal();
        const double tc = p.total_curvature();
        CHECK(tc > prev_tc);
        prev_tc = tc;
    }
    CHECK(prev_tc > 100.0);
}
