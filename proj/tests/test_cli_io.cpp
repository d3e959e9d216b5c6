#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "jnormals/io.hpp"

using namespace jnormals;
using std::numbers::pi;

TEST_CASE("polyline csv round trip") {
    std::vector<Vec> verts;
    for (int i = 0; i < 5; ++i) {
        Vec v(4);
        v << std::cos(2 * pi * i / 5), std::sin(2 * pi * i / 5), 0.1 * i, -1.0 / (i + 1);
        verts.push_back(v);
    }
    const Polygonal p(verts, true);
    const std::string text = polyline_to_csv_text(p);
    const Polygonal q = polyline_from_csv_text(text);
    REQUIRE(q.vertex_count() == p.vertex_count());
    CHECK(q.closed());
    CHECK(q.dim() == 4);
    for (int i = 0; i < p.vertex_count(); ++i) {
        CHECK((q.vertex(i) - p.vertex(i)).norm() == 0.0);  // 17 digits round-trip exactly
    }
}

TEST_CASE("malformed polyline input") {
    CHECK_THROWS_AS((void)polyline_from_csv_text("1,2,3\n4,5,6\n"), IoError);  // no header
    CHECK_THROWS_AS((void)polyline_from_csv_text("# dim=3 closed=0\n1,2,x\n"), IoError);
    CHECK_THROWS_AS((void)polyline_from_csv_text("# dim=3 closed=0\n1,2\n3,4\n"), IoError);
}

TEST_CASE("curve spec json") {
    nlohmann::json spec = {{"curve", "helix_r3"}, {"params", {{"a", 2.0}, {"b", 1.0}}}};
    const CurvePtr c = curve_from_json(spec);
    CHECK(c->name() == "helix_r3");
    CHECK(c->dim() == 3);
    CHECK(std::abs(c->deriv(1.0, 1).norm() - 1.0) < 1e-12);

    nlohmann::json restricted = {{"curve", "circle"},
                                 {"params", {{"r", 1.0}}},
                                 {"domain", {0.0, pi}},
                                 {"dim", 3}};
    const CurvePtr half = curve_from_json(restricted);
    CHECK(!half->closed());
    CHECK(half->period() == doctest::Approx(pi));

    CHECK_THROWS_AS((void)curve_from_json({{"curve", "nope"}}), UnknownCurve);
    CHECK_THROWS_AS((void)curve_from_json({{"params", {{"r", 1.0}}}}), IoError);
    nlohmann::json bad_dim = {{"curve", "circle"}, {"dim", 4}};
    CHECK_THROWS_AS((void)curve_from_json(bad_dim), IoError);
}

TEST_CASE("report serialization carries the numbers verbatim") {
    IntGeoReport rep;
    rep.direct = 1.0 / 3.0;
    rep.mc_mean = pi;
    rep.mc_stderr = 1e-17;
    rep.n_samples = 7;
    rep.z_score = -2.5;
    const nlohmann::json j = to_json(rep);
    CHECK(j.at("direct").get<double>() == rep.direct);
    CHECK(j.at("mc_mean").get<double>() == rep.mc_mean);
    CHECK(j.at("mc_stderr").get<double>() == rep.mc_stderr);
}

TEST_CASE("formatting keeps 17 significant digits") {
    const double x = 0.1234567890123456789;
    CHECK(std::stod(format_double(x)) == x);
    CHECK(std::stod(format_double(pi)) == pi);
}
