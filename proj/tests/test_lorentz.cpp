#include "doctest.h"

#include "test_helpers.hpp"

using namespace hyproc;
using namespace hyproc::testutil;

namespace {

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

constexpr double kAcoshSqrt2 = 0.88137358701954302523;  // acosh(sqrt(2))
constexpr double kSqrt26 = 5.0990195135927848300;

} // namespace

TEST_CASE("lorentzian inner product definition") {
    CHECK(lorentzian_inner(vec3(1, 0, 0), vec3(1, 0, 0)) == -1.0);
    CHECK(lorentzian_inner(vec3(1, 0, 0), vec3(0, 1, 0)) == 0.0);
    CHECK(lorentzian_inner(vec3(2, 1, 1), vec3(1, 1, 0)) == -1.0);
    CHECK_THROWS_AS(lorentzian_inner(vec2(1, 0), vec3(1, 0, 0)), ValidationError);
    CHECK_THROWS_AS(lorentzian_inner(Vec::Ones(1), Vec::Ones(1)), ValidationError);
}

TEST_CASE("lorentzian inner product bilinearity and symmetry") {
    auto rng = seeded(11);
    for (int k = 0; k < 50; ++k) {
        const Vec u = normal_vector(4, rng);
        const Vec v = normal_vector(4, rng);
        const Vec w = normal_vector(4, rng);
        const double a = normal_vector(1, rng)[0];
        CHECK(lorentzian_inner(u, v) == doctest::Approx(lorentzian_inner(v, u)).epsilon(1e-14));
        const double lhs = lorentzian_inner(a * u + w, v);
        const double rhs = a * lorentzian_inner(u, v) + lorentzian_inner(w, v);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("lorentz form matrix") {
    Mat h = lorentz_form(2);
    CHECK(h(0, 0) == -1.0);
    CHECK(h(1, 1) == 1.0);
    CHECK(h(2, 2) == 1.0);
    CHECK(h.cwiseAbs().sum() == 3.0);
}

TEST_CASE("point validation") {
    CHECK_NOTHROW(LoidPoint(vec3(1, 0, 0)));
    CHECK_NOTHROW(LoidPoint(vec3(std::sqrt(2.0), 1, 0)));
    CHECK_THROWS_AS(LoidPoint(vec3(1, 1, 0)), ValidationError);          // off sheet
    CHECK_THROWS_AS(LoidPoint(vec3(-std::sqrt(2.0), 1, 0)), ValidationError);  // lower sheet
    CHECK_THROWS_AS(LoidPoint(vec3(1, NAN, 0)), ValidationError);
    CHECK_THROWS_AS(LoidPoint(Vec::Ones(1)), ValidationError);
}

TEST_CASE("renormalization pulls drifted coordinates back") {
    Vec drifted = vec3(std::sqrt(2.0) + 2e-10, 1, 0);
    const LoidPoint fixed = LoidPoint(drifted).renormalized();
    CHECK(std::abs(lorentzian_inner(fixed.coords(), fixed.coords()) + 1.0) <= 1e-15);
}

TEST_CASE("lift and project") {
    CHECK((lift(vec2(0, 0)).coords() - vec3(1, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
    const LoidPoint q34 = lift(vec2(3, 4));
    CHECK(std::abs(q34.coords()[0] - kSqrt26) <= 1e-15);
    CHECK(q34.coords()[1] == 3.0);
    CHECK(q34.coords()[2] == 4.0);

    CHECK(project(LoidPoint(vec3(1, 0, 0))).isZero());
    CHECK((project(q34) - vec2(3, 4)).norm() == 0.0);
    CHECK((project(LoidPoint(vec3(std::sqrt(2.0), 1, 0))) - vec2(1, 0)).norm() == 0.0);

    auto rng = seeded(5);
    for (int k = 0; k < 100; ++k) {
        const Vec z = normal_vector(3, rng);
        CHECK((project(lift(z)) - z).norm() == 0.0);  // exact round trip
    }
    for (int k = 0; k < 20; ++k) {
        const LoidPoint x = lift(normal_vector(3, rng));
        CHECK((lift(project(x)).coords() - x.coords()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(lift(Vec(0)), ValidationError);
    CHECK_THROWS_AS(lift(vec2(INFINITY, 0)), ValidationError);
}

TEST_CASE("distance values") {
    const LoidPoint origin = LoidPoint::origin(2);
    CHECK(distance(origin, origin) == 0.0);
    CHECK(std::abs(distance(origin, lift(vec2(1, 0))) - kAcoshSqrt2) <= 1e-15);
    CHECK(distance(lift(vec2(0.6, 0.8)), lift(vec2(0.6, 0.8))) == 0.0);
    CHECK_THROWS_AS(distance(origin, LoidPoint::origin(3)), ValidationError);
}

TEST_CASE("distance axioms on random points") {
    auto rng = seeded(21);
    for (int k = 0; k < 60; ++k) {
        const LoidPoint a = lift(normal_vector(3, rng));
        const LoidPoint b = lift(normal_vector(3, rng));
        const LoidPoint c = lift(normal_vector(3, rng));
        CHECK(distance(a, b) >= 0.0);
        CHECK(std::abs(distance(a, b) - distance(b, a)) <= 1e-12);
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }
}

TEST_CASE("distance of nearly coincident points is finite and tiny") {
    const LoidPoint x = lift(vec2(0.3, -0.2));
    Vec nudged = project(x);
    nudged[0] += 1e-12;
    const double dist = distance(x, lift(nudged));
    CHECK(std::isfinite(dist));
    CHECK(dist <= 1e-11);
    CHECK(dist >= 0.0);
}

TEST_CASE("distance does not lose precision far from the origin") {
    // Points at radius ~4 separated by ~1e-9: the direct acosh form would
    // return garbage at the sqrt(eps) scale here.
    Vec z = vec2(25.0, 14.0);
    Vec z2 = z;
    z2[0] += 1e-9;
    const double dist = distance(lift(z), lift(z2));
    const double expected = 4.8955020891458758e-10;  // high-precision evaluation
    CHECK(std::abs(dist - expected) <= 1e-12);
}

TEST_CASE("point sets validate their columns") {
    auto rng = seeded(8);
    const PointSet set = random_pointset(3, 6, rng);
    CHECK(set.dim() == 3);
    CHECK(set.size() == 6);
    CHECK(set.coords().rows() == 4);
    CHECK(set.params().rows() == 3);
    CHECK((lift(set.params().col(2)).coords() - set.point(2).coords()).norm() <= 1e-15);

    Mat bad = set.coords();
    bad(0, 1) = 1.0;  // off the sheet
    CHECK_THROWS_AS(PointSet{bad}, ValidationError);
    CHECK_THROWS_AS(PointSet{Mat(4, 0)}, ValidationError);
    CHECK_THROWS_AS(PointSet{std::vector<LoidPoint>{}}, ValidationError);
    CHECK_THROWS_AS(set.point(6), ValidationError);

    const std::vector<LoidPoint> mixed{LoidPoint::origin(2), LoidPoint::origin(3)};
    CHECK_THROWS_AS(PointSet{mixed}, ValidationError);
}

TEST_CASE("from_params matches lifting each column") {
    auto rng = seeded(9);
    Mat z(2, 5);
    for (int j = 0; j < 5; ++j) z.col(j) = normal_vector(2, rng);
    const PointSet set = PointSet::from_params(z);
    for (int j = 0; j < 5; ++j) {
        CHECK((set.point(j).coords() - lift(z.col(j)).coords()).cwiseAbs().maxCoeff() == 0.0);
    }
}
