#include "ptolemy/errors.hpp"
#include "ptolemy/models.hpp"

#include <doctest.h>

#include <cmath>

using namespace ptolemy;

namespace {

Vec v3(double a, double b, double t) { return (Vec(3) << a, b, t).finished(); }

}  // namespace

TEST_CASE("Heisenberg gauge and Cygan distance") {
    auto M = make_heisenberg(1);
    CHECK(M->gauge(v3(1, 0, 0)) == doctest::Approx(1.0));
    CHECK(M->gauge(v3(0, 0, 16)) == doctest::Approx(4.0));
    // (|z|^4 + t^2)^(1/4) with |z|^2 = 2, t = 2: 8^(1/4)
    CHECK(M->gauge(v3(1, 1, 2)) == doctest::Approx(std::pow(8.0, 0.25)).epsilon(1e-15));
    Vec p = v3(0.4, -1.2, 0.7);
    CHECK(M->dist(p, p) == 0.0);

    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        Vec a = M->random_point(rng), b = M->random_point(rng), g = M->random_point(rng);
        CHECK(M->dist(a, b) == doctest::Approx(M->dist(b, a)).epsilon(1e-14));
        CHECK(M->dist(M->mul(g, a), M->mul(g, b)) == doctest::Approx(M->dist(a, b)).epsilon(1e-9));
        CHECK(M->dist(M->dilate(3.0, a), M->dilate(3.0, b)) ==
              doctest::Approx(3.0 * M->dist(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("horizontal lines are geodesics") {
    for (auto M : {make_heisenberg(1), make_heisenberg(2), make_euclidean(3)}) {
        Rng rng(4);
        OrientedLine l = ptolemy_line(M, MPoint::infinity(), MPoint(M->random_point(rng)),
                                      M->random_direction(rng));
        for (double s : {-2.5, -0.3, 0.0, 1.7})
            for (double t : {-1.0, 0.4, 3.0})
                CHECK(M->dist(l.at(s), l.at(t)) == doctest::Approx(std::abs(s - t)).epsilon(1e-7));
    }
}

TEST_CASE("Ptolemy lines") {
    auto H = make_heisenberg(1);
    OrientedLine l = ptolemy_line(H, MPoint::infinity(), MPoint(H->identity()), v3(1, 0, 0));
    CHECK((l.at(2.5) - v3(2.5, 0, 0)).norm() == 0.0);
    CHECK_THROWS_AS(ptolemy_line(H, MPoint::infinity(), MPoint(H->identity()), v3(0, 0, 1)),
                    NonHorizontalDirection);

    auto E = make_euclidean(2);
    Vec dir = (Vec(2) << 0.6, 0.8).finished();
    OrientedLine le = ptolemy_line(E, MPoint::infinity(), MPoint{1.0, 2.0}, dir);
    CHECK((le.at(5.0) - (Vec(2) << 4.0, 6.0).finished()).norm() < 1e-15);
}

TEST_CASE("Euclidean s-inversion closed form") {
    auto E = make_euclidean(2);
    SpaceInversion phi{MPoint::infinity(), MPoint{0.0, 0.0}, 1.0};
    MPoint y = s_inversion_apply(E, phi, MPoint{2.0, 0.0});
    CHECK((y.coords() - (Vec(2) << -0.5, 0.0).finished()).norm() < 1e-15);
    CHECK(s_inversion_apply(E, phi, MPoint::infinity()) == MPoint{0.0, 0.0});
    CHECK(s_inversion_apply(E, phi, MPoint{0.0, 0.0}).is_infinity());
}

TEST_CASE("s-inversion invariants") {
    for (auto M : {make_euclidean(2), make_heisenberg(1)}) {
        Rng rng(8);
        for (int i = 0; i < 200; ++i) {
            MPoint omega(M->random_point(rng)), base(M->random_point(rng));
            if (M->dist(omega.coords(), base.coords()) < 0.5) continue;
            SpaceInversion phi{omega, base, 0.8};
            MPoint x(M->random_point(rng));
            MPoint y = s_inversion_apply(M, phi, s_inversion_apply(M, phi, x));
            CHECK((y.coords() - x.coords()).norm() < 1e-9 * (1 + x.coords().norm()));
            CHECK(chart_distance(s_inversion_apply(M, phi, omega), base) < 1e-12);
            CHECK(chart_distance(s_inversion_apply(M, phi, base), omega) < 1e-12);
        }
    }
}

TEST_CASE("homothety and shift") {
    auto H = make_heisenberg(1);
    Rng rng(9);
    Mobius h = homothety(H, MPoint::infinity(), MPoint(v3(0.3, -0.2, 0.5)), 2.5);
    Mobius id = homothety(H, MPoint::infinity(), MPoint(v3(0.3, -0.2, 0.5)), 1.0);
    for (int i = 0; i < 50; ++i) {
        Vec a = H->random_point(rng), b = H->random_point(rng);
        CHECK(H->dist(h(MPoint(a)).coords(), h(MPoint(b)).coords()) ==
              doctest::Approx(2.5 * H->dist(a, b)).epsilon(1e-10));
        CHECK((id(MPoint(a)).coords() - a).norm() < 1e-14);
    }
    CHECK_THROWS_AS(homothety(H, MPoint::infinity(), MPoint::infinity(), 2.0), DegenerateInput);

    MPoint x(v3(1, 2, 3)), x2(v3(-1, 0.5, 2));
    Mobius eta = shift(H, MPoint::infinity(), x, x2);
    CHECK((eta(x).coords() - x2.coords()).norm() < 1e-14);
    // Horizontal lines through x go to horizontal lines through x2 with the same direction.
    Vec v = v3(0.6, 0.8, 0);
    OrientedLine l(H, x.coords(), v), l2(H, x2.coords(), v);
    for (double s : {-1.0, 0.5, 2.0}) CHECK((eta(l.point(s)).coords() - l2.at(s)).norm() < 1e-13);
}

TEST_CASE("Ptolemy circles") {
    auto E = make_euclidean(2);
    MetricRep d(E);
    Vec e1 = (Vec(2) << 1, 0).finished(), e2 = (Vec(2) << 0, 1).finished(), c = Vec::Zero(2);
    CHECK(is_ptolemy_circle(d, horizontal_circle(E, c, e1, e2, 1.5), 500, 1e-9));
    CHECK_FALSE(is_ptolemy_circle(d, ellipse_curve(E, c, e1, e2, 2.0, 1.0), 500, 1e-6));

    SpaceInversion phi{MPoint::infinity(), MPoint{3.0, 0.5}, 1.2};
    Curve img = map_curve(as_mobius(E, phi), horizontal_circle(E, c, e1, e2, 1.0));
    CHECK(is_ptolemy_circle(d, img, 500, 1e-9));

    auto H = make_heisenberg(1);
    MetricRep dh(H);
    OrientedLine l(H, v3(0.2, 0.1, -0.4), v3(0.0, 1.0, 0.0));
    CHECK(is_ptolemy_circle(dh, line_curve(l), 500, 1e-9));
}
