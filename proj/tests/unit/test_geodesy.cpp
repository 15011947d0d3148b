#include "ptolemy/errors.hpp"
#include "ptolemy/geodesy.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ptolemy;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("Busemann functions match closed forms") {
    auto E = make_euclidean(2);
    Vec v = vec({0.6, 0.8}), w = vec({0.5, -1.0});
    BusemannFn be(OrientedLine(E, w, v));
    CHECK(be(w) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    Vec x = vec({2.0, 3.0});
    CHECK(be(x) == doctest::Approx(-(x - w).dot(v)).epsilon(1e-9));

    auto H = make_heisenberg(1);
    Vec u = vec({0.8, -0.6, 0.0});
    BusemannFn bh(OrientedLine(H, H->identity(), u));
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Vec p = H->random_point(rng);
        double want = -(p[0] * u[0] + p[1] * u[1]);
        CHECK(std::abs(bh(p) - want) < 1e-6);
    }
}

TEST_CASE("duality on the extended real line") {
    auto E = make_euclidean(1);
    OrientedLine sigma(E, vec({0.0}), vec({1.0}));
    DualityResult r = duality_check(sigma, MPoint{0.7}, 1e-4);
    CHECK(r.residual < 1e-5);
    // On sigma itself b+ o c(t) = -1/t.
    DualityResult on = duality_check(sigma, MPoint{2.0}, 1e-4);
    CHECK(on.b_plus == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(on.residual < 1e-5);
}

TEST_CASE("flatness") {
    auto E = make_euclidean(2);
    OrientedLine l(E, vec({0.1, 0.2}), vec({1.0, 0.0}));
    std::vector<Vec> pts{vec({3.0, -1.0}), vec({-2.0, 4.0}), l.at(1.5)};
    CHECK(flatness_check(l, pts) < 1e-8);

    auto H = make_heisenberg(1);
    OrientedLine lh(H, vec({0.3, -0.2, 0.4}), vec({0.0, 1.0, 0.0}));
    Rng rng(6);
    std::vector<Vec> hp;
    for (int i = 0; i < 100; ++i) hp.push_back(H->random_point(rng));
    CHECK(flatness_check(lh, hp) < 1e-6);
}

TEST_CASE("slopes") {
    auto H = make_heisenberg(1);
    Vec u = vec({1.0, 0.0, 0.0}), v = vec({std::cos(1.0), std::sin(1.0), 0.0});
    OrientedLine lu(H, H->identity(), u), lv(H, H->identity(), v);
    CHECK(slope(lu, lu) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(slope(lv, lu) == doctest::Approx(-std::cos(1.0)).epsilon(1e-6));
    CHECK(slope(lv.reversed(), lu) == doctest::Approx(std::cos(1.0)).epsilon(1e-6));
    CHECK(slope(lv, lu) == doctest::Approx(slope(lu, lv)).epsilon(1e-6));
    // J e1 is orthogonal to e1.
    OrientedLine lj(H, H->identity(), vec({0.0, 1.0, 0.0}));
    CHECK(std::abs(slope(lj, lu)) < 1e-6);
}

TEST_CASE("first variation in the plane") {
    auto E = make_euclidean(2);
    const double th = 0.7;
    OrientedLine l(E, Vec::Zero(2), vec({1.0, 0.0})), lp(E, Vec::Zero(2), vec({std::cos(th), std::sin(th)}));
    FirstVariation a = first_variation_check(l, lp, 1.3), b = first_variation_check(l, lp, -1.3);
    CHECK(a.residual < 1e-5);
    CHECK(b.residual < 1e-5);
    CHECK(std::abs(a.expected) == doctest::Approx(std::cos(th)).epsilon(1e-6));
    CHECK(a.derivative == doctest::Approx(-b.derivative).epsilon(1e-5));
    // Orthogonal lines: derivative vanishes.
    OrientedLine lo(E, Vec::Zero(2), vec({0.0, 1.0}));
    CHECK(std::abs(first_variation_check(l, lo, 0.8).derivative) < 1e-5);
}

TEST_CASE("tangent lines") {
    auto E = make_euclidean(2);
    Curve c = horizontal_circle(E, Vec::Zero(2), vec({1.0, 0.0}), vec({0.0, 1.0}), 2.0);
    // At angle 0 the point is (2,0) and the tangent runs along +e2.
    OrientedLine t = tangent_line(E, c, 0.0);
    CHECK((t.through() - vec({2.0, 0.0})).norm() < 1e-9);
    CHECK((t.direction() - vec({0.0, 1.0})).norm() < 1e-6);

    auto H = make_heisenberg(1);
    OrientedLine l(H, vec({0.2, 0.4, -0.3}), vec({0.6, 0.8, 0.0}));
    OrientedLine tl = tangent_line(H, line_curve(l), 0.5);
    for (double s : {-2.0, 0.5, 3.0}) CHECK(distance_to_line(l.point(s), tl) < 1e-6);
}

TEST_CASE("fibration and property K") {
    auto H = make_heisenberg(1);
    const MPoint inf = MPoint::infinity();
    Fiber f0 = fiber(H, inf, MPoint(H->identity()));
    CHECK(fiber_contains(H, f0, MPoint(vec({0.0, 0.0, 5.0}))));
    CHECK_FALSE(fiber_contains(H, f0, MPoint(vec({0.1, 0.0, 0.0}))));
    CHECK((project(H, inf, MPoint(vec({1.0, 2.0, 3.0}))) - vec({1.0, 2.0})).norm() == 0.0);

    Fiber f = fiber(H, inf, MPoint(vec({3.0, 4.0, 7.0})));
    KLine k = k_line_connect(H, inf, MPoint(H->identity()), f);
    CHECK((H->horizontal(k.line.direction()) - vec({0.6, 0.8})).norm() < 1e-15);
    CHECK(k.parameter == doctest::Approx(5.0));
    CHECK(fiber_contains(H, f, MPoint(k.hit)));
    CHECK_THROWS_AS(k_line_connect(H, inf, MPoint(vec({3.0, 4.0, -1.0})), f), NoSolution);
    CHECK_THROWS_AS(fiber(H, MPoint(H->identity()), MPoint(H->identity())), DegenerateInput);
}

TEST_CASE("arclength defect on a circle shrinks") {
    auto E = make_euclidean(2);
    Curve c = horizontal_circle(E, Vec::Zero(2), vec({1.0, 0.0}), vec({0.0, 1.0}), 1.0);
    double prev = 1e300;
    for (double r : {1e-1, 1e-2, 1e-3}) {
        double d = arclength_defect(E, c, 0.1, r);
        // arc - chord = r^3 / 24 + ...
        CHECK(d == doctest::Approx(r / 24.0).epsilon(0.05));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("excess inequality near t = 0") {
    auto E = make_euclidean(2);
    TurnedCircle tc = turned_circle(E, vec({1.0, 0.0}), Vec::Zero(2), 0.9);
    ExcessResult r = excess_check(E, tc.curve, tc.tx, tc.ty, {1e-7, 1e-5, 1e-3, 0.1});
    CHECK(r.worst <= 1e-8);
    CHECK(std::abs(r.lhs[0]) < 1e-5);
    CHECK(std::abs(r.rhs[0]) < 1e-5);
    CHECK(std::abs(r.lhs[0]) < std::abs(r.lhs[2]));

    CHECK_THROWS_AS(turned_circle(E, Vec::Zero(2), Vec::Zero(2), 0.5), DegenerateInput);
    CHECK_THROWS_AS(turned_circle(make_euclidean(1), vec({1.0}), vec({0.0}), 0.5), DegenerateInput);
}
