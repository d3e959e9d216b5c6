#include <doctest.h>

#include <cmath>

#include "jnormals/taylor.hpp"

using namespace jnormals;

TEST_CASE("stencil chords of a line reproduce the tangent exactly") {
    const CurvePtr c = builtin_curve("line", {{"dim", 3}, {"length", 10.0}});
    const auto vs = stencil_vectors(*c, 5.0, 0.3, 2);
    const Vec t = c->deriv(5.0, 1);
    CHECK((vs[0] - t).norm() < 1e-14);
    CHECK((vs[1] + t).norm() < 1e-14);  // odd chords run backwards
    CHECK((vs[2] - t).norm() < 1e-14);
}

TEST_CASE("stencil leading terms on the circle and helix") {
    const CurvePtr circle = builtin_curve("circle", {{"r", 1.0}});
    {
        const double h = 0.1;
        const auto vs = stencil_vectors(*circle, 0.0, h, 2);
        const Vec expect = circle->deriv(0.0, 1) + circle->deriv(0.0, 3) * h * h / 6.0;
        CHECK((vs[0] - expect).norm() <= 1e-4);
    }
    const CurvePtr helix = builtin_curve("helix_r3");
    {
        const double s = 2.0, h = 0.05;
        const auto vs = stencil_vectors(*helix, s, h, 2);
        const Vec expect = -helix->deriv(s, 1) + 2.0 * helix->deriv(s, 2) * h -
                           (13.0 / 6.0) * helix->deriv(s, 3) * h * h;
        CHECK((vs[1] - expect).norm() <= 5e-4);
    }
}

TEST_CASE("stencil frames are orthonormal at every step") {
    const CurvePtr helix = builtin_curve("helix_r3");
    for (double h : default_steps(*helix)) {
        const StencilFrame f = stencil_frame(*helix, 3.0, h, 2);
        for (std::size_t a = 0; a < f.frame.size(); ++a) {
            CHECK(std::abs(f.frame[a].vec().norm() - 1.0) < kUnitTol);
            for (std::size_t b = a + 1; b < f.frame.size(); ++b) {
                CHECK(std::abs(f.frame[a].vec().dot(f.frame[b].vec())) < 10 * kOrthTol);
            }
        }
    }
}

TEST_CASE("out-of-domain stencils are rejected") {
    const CurvePtr helix = builtin_curve("helix_r3");
    CHECK_THROWS_AS((void)stencil_vectors(*helix, 0.05, 0.1, 2), OutOfDomain);
}

TEST_CASE("third-order expansion slopes on the helix") {
    const CurvePtr helix = builtin_curve("helix_r3");
    const auto reports = verify_pgm3(*helix, helix->period() / 2, default_steps(*helix));
    REQUIRE(reports.size() == 5);
    for (const OrderFitReport& rep : reports) {
        INFO(rep.quantity, " slope=", rep.fitted_slope);
        CHECK(rep.passed);
        CHECK(rep.monotone);
    }
}

TEST_CASE("third-order expansions reject lines") {
    const CurvePtr line = builtin_curve("line", {{"dim", 3}, {"length", 10.0}});
    CHECK_THROWS_AS((void)verify_pgm3(*line, 5.0, {0.01, 0.005}), NotSmoothlyTurning);
}

TEST_CASE("codimension-3 expansion slopes on the generalized helix") {
    const CurvePtr gh = builtin_curve("generalized_helix_r4");
    const auto reports = verify_pgm4(*gh, gh->period() / 2, default_steps(*gh));
    REQUIRE(reports.size() == 4);
    for (const OrderFitReport& rep : reports) {
        INFO(rep.quantity, " slope=", rep.fitted_slope);
        CHECK(rep.passed);
        CHECK(rep.monotone);
    }
}

TEST_CASE("codimension-3 expansions demand ambient dimension 4") {
    const CurvePtr helix = builtin_curve("helix_r3");
    CHECK_THROWS_AS((void)verify_pgm4(*helix, 3.0, {0.01}), DimensionMismatch);
}

TEST_CASE("parity: flipping the step sign flips odd-order terms only") {
    // v_0 is symmetric in h (even powers only): compare +h and the re-indexed
    // stencil at -h via the difference of t(h) expansions
    const CurvePtr gh = builtin_curve("generalized_helix_r4");
    const double s = gh->period() / 2;
    for (double h : {0.02, 0.01}) {
        const auto vp = stencil_vectors(*gh, s, h, 3);
        // even chords with negative offsets mirror the odd chords
        const Vec v0m = (gh->eval(s - h) - gh->eval(s + h)) / (-2.0 * h);
        CHECK((vp[0] - v0m).norm() < 1e-14);  // v_0 even in h
    }
}

TEST_CASE("zero test for the second-order coefficient") {
    // on constant-curvature curves c''' . c'' = 0, so the tangential component
    // of the second-order coefficient of n_1(h) vanishes
    const CurvePtr gh = builtin_curve("generalized_helix_r4");
    const double s = 1.0;
    const Vec d2 = gh->deriv(s, 2), d3 = gh->deriv(s, 3);
    CHECK(std::abs(d3.dot(d2)) < 1e-12);
}

TEST_CASE("projective stencil convergence to the jordan frame") {
    const CurvePtr helix = builtin_curve("helix_r3");
    for (const auto& rep : verify_pgmn(*helix, 3.0, 2, default_steps(*helix))) {
        INFO(rep.quantity, " slope=", rep.fitted_slope);
        CHECK(rep.passed);
    }
    const CurvePtr gh5 = builtin_curve("generalized_helix_r5");
    for (const auto& rep : verify_pgmn(*gh5, gh5->period() / 2, 4, default_steps(*gh5))) {
        INFO(rep.quantity, " slope=", rep.fitted_slope);
        CHECK(rep.passed);
    }
    const CurvePtr line = builtin_curve("line", {{"dim", 3}, {"length", 10.0}});
    CHECK_THROWS_AS((void)verify_pgmn(*line, 5.0, 1, {0.01, 0.005}), NotSmoothlyTurning);
}
