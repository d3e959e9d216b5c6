#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jnormals/relaxation.hpp"

using namespace jnormals;
using std::numbers::pi;

namespace {

const std::vector<int> kShortSchedule = {16, 32, 64, 128, 256, 512};

}  // namespace

TEST_CASE("circle relaxation converges to 2 pi") {
    const CurvePtr c = builtin_curve("circle", {{"r", 1.0}});
    const RelaxationRun run = estimate_Fj(c, 1, kShortSchedule);
    REQUIRE(!run.levels.empty());
    CHECK(std::abs(run.final_value() - 2 * pi) < 1e-6);
    CHECK(run.cauchy);
    // modulus decreases along the levels
    for (std::size_t i = 1; i < run.levels.size(); ++i) {
        CHECK(run.levels[i].modulus <= run.levels[i - 1].modulus + 1e-9);
        CHECK(run.levels[i].n > run.levels[i - 1].n);
    }
}

TEST_CASE("helix last normal converges to |tau| L") {
    const CurvePtr c = builtin_curve("helix_r3", {{"a", 1.0}, {"b", 0.5}});
    const double expected = 0.4 * c->period();
    const RelaxationRun run = estimate_Fj(c, 2, {64, 128, 256, 512, 1024, 2048});
    CHECK(std::abs(run.final_value() - expected) / expected < 0.005);
    CHECK(run.cauchy);
    CHECK(std::abs(*run.extrapolated - expected) / expected < 0.002);
    // error decreases monotonically past the first levels
    double prev = 1e9;
    for (const RelaxLevel& lvl : run.levels) {
        const double err = std::abs(lvl.length_j - expected);
        CHECK(err < prev + 1e-12);
        prev = err;
    }
    CHECK(std::abs(run.final_value() - smooth_nj_length(*c, 2)) / expected < 0.005);
}

TEST_CASE("polygonal inputs give level-constant runs once the modulus is fine") {
    std::vector<Vec> verts;
    for (int i = 0; i < 6; ++i) {
        Vec v(3);
        v << std::cos(2.0 * pi * i / 6), std::sin(2.0 * pi * i / 6), (i % 2 == 0 ? 0.3 : -0.2);
        verts.push_back(v);
    }
    const Polygonal p(verts, true);
    const double direct = discrete_normal(p, 2).stats.length;
    const CurvePtr as_curve = polygonal_as_curve(p);
    const RelaxationRun run = estimate_Fj(as_curve, 2, {16, 32, 64, 128, 256});
    const double half_mesh = 0.5 * p.mesh();
    for (const RelaxLevel& lvl : run.levels) {
        if (lvl.modulus < half_mesh) {
            CHECK(lvl.length_j == doctest::Approx(direct).epsilon(1e-12));
        }
    }
    CHECK(run.final_value() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("f1 bound against total curvature on planar inputs") {
    const CurvePtr circle = builtin_curve("circle", {{"r", 1.0}});
    const F1TcReport rep = check_f1_tc_bound(circle, kShortSchedule);
    CHECK(rep.all_hold);
    for (const F1TcLevel& lvl : rep.levels) {
        CHECK(lvl.length_n1 == doctest::Approx(lvl.tc).epsilon(1e-9));  // tight for the circle
    }
    // a closed planar polygonal with a turning angle above pi/2: strict gap
    std::vector<Vec> verts;
    Vec a(3), b(3), c(3), d(3);
    a << 0, 0, 0;
    b << 1, 0, 0;
    c << 1.3, 1.0, 0;
    d << -0.5, 0.8, 0;
    verts = {a, b, c, d};
    const Polygonal p(verts, true);
    double max_angle = 0.0;
    const auto dirs = p.segment_directions();
    for (int i = 0; i < 4; ++i) {
        max_angle = std::max(max_angle, sphere_distance(dirs[i], dirs[(i + 1) % 4]));
    }
    REQUIRE(max_angle > pi / 2);
    const double l1 = discrete_normal(p, 1).stats.length;
    CHECK(l1 < p.total_curvature() - 0.1);
    // line: no admissible normal at any level, the bound holds vacuously
    const CurvePtr line = builtin_curve("line", {{"dim", 3}, {"length", 1.0}});
    const F1TcReport line_rep = check_f1_tc_bound(line, {4, 8});
    CHECK(line_rep.levels.empty());
    CHECK(line_rep.all_hold);
}

TEST_CASE("weak normal of the circle walks at constant speed") {
    const CurvePtr c = builtin_curve("circle", {{"r", 1.0}});
    const WeakNormalPath path = weak_normal(c, 1, 512, 257);
    CHECK(path.total_length == doctest::Approx(2 * pi).epsilon(1e-9));
    const double step = path.total_length / 256;
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
        CHECK(rp_distance(path.samples[i - 1], path.samples[i]) ==
              doctest::Approx(step).epsilon(0.01));
    }
}

TEST_CASE("weak normal of a planar curve for the last order is a point") {
    const CurvePtr c = builtin_curve("circle", {{"r", 1.0}});
    const WeakNormalPath path = weak_normal(c, 2, 256, 65);
    CHECK(path.total_length == doctest::Approx(0.0));
    for (const ProjPoint& q : path.samples) {
        CHECK(rp_distance(q, path.samples.front()) < 1e-12);
    }
    const SmoothComparison cmp{0.0, 0.0};
    CHECK(cmp.max_pointwise == 0.0);  // trivially zero for the constant path
}

TEST_CASE("weak normal comparison against the smooth normals on the helix") {
    const CurvePtr c = builtin_curve("helix_r3", {{"a", 1.0}, {"b", 0.5}});
    for (int j : {1, 2}) {
        const WeakNormalPath path = weak_normal(c, j, 2048, 512);
        const SmoothComparison cmp = compare_to_smooth(path, c, j);
        INFO("j=", j, " max_pointwise=", cmp.max_pointwise);
        CHECK(cmp.max_pointwise <= 0.02);
        CHECK(cmp.frechet_estimate <= 0.02);
    }
}

TEST_CASE("eflex weak first normal matches the mild normal projectively") {
    const CurvePtr c = builtin_curve("eflex", {{"half_width", 0.8}});
    const WeakNormalPath path = weak_normal(c, 1, 1024, 256);
    const SmoothComparison cmp = compare_to_smooth(path, c, 1);
    CHECK(cmp.max_pointwise <= 0.05);
}

TEST_CASE("discrete frechet distance basics") {
    std::vector<ProjPoint> a, b;
    Vec e1(3), e2(3);
    e1 << 1, 0, 0;
    e2 << 0, 1, 0;
    a.push_back(ProjPoint(e1));
    a.push_back(ProjPoint(e2));
    b.push_back(ProjPoint(e1));
    b.push_back(ProjPoint(e2));
    CHECK(discrete_frechet(a, b) == doctest::Approx(0.0));
    b.pop_back();
    CHECK(discrete_frechet(a, b) == doctest::Approx(pi / 2));
}

TEST_CASE("nonrectifiable demo: diverging curvature, converging length") {
    const NonrectifiableReport rep = estimate_Fj_nonrectifiable_demo({200, 1000});
    REQUIRE(rep.levels.size() == 2);
    CHECK(rep.levels[1].tc > 100.0);
    CHECK(rep.levels[1].tc > rep.levels[0].tc);
    for (const NonrectifiableLevel& lvl : rep.levels) {
        CHECK(lvl.tat == doctest::Approx(0.0));
        CHECK(lvl.length < rep.quadrature_length);
    }
}
