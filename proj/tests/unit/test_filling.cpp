#include "ptolemy/errors.hpp"
#include "ptolemy/filling.hpp"

#include <doctest.h>

#include <cmath>

using namespace ptolemy;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

double oracle(const Vec& x, double r, const Vec& y, double R) {
    return std::acosh(1.0 + ((x - y).squaredNorm() + (r - R) * (r - R)) / (2.0 * r * R));
}

}  // namespace

TEST_CASE("inversion round trip") {
    auto H = make_heisenberg(1);
    FillingPoint s{MPoint(vec({0.3, -0.1, 0.8})), 1.7};
    SpaceInversion phi = as_inversion(s);
    CHECK(phi.omega.is_infinity());
    CHECK(phi.radius == 1.7);
    FillingPoint back = from_inversion(H, phi);
    CHECK(back.base == s.base);
    CHECK(back.height == s.height);
    CHECK(s_inversion_apply(H, phi, MPoint::infinity()) == s.base);
    // |x w'| |s(x) w'| = r^2
    MPoint x(vec({1.0, 2.0, -0.5}));
    MPoint y = s_inversion_apply(H, phi, x);
    CHECK(H->dist(x.coords(), s.base.coords()) * H->dist(y.coords(), s.base.coords()) ==
          doctest::Approx(1.7 * 1.7).epsilon(1e-12));
}

TEST_CASE("common line of a vertical pair") {
    auto H = make_heisenberg(1);
    MPoint b(vec({0.2, 0.4, 1.0}));
    FillingLine L = common_line(H, {b, 1.0}, {b, 3.0});
    CHECK(L.a() == b);
    CHECK(L.a2().is_infinity());
}

TEST_CASE("common line on the real line") {
    // Geodesic through (0,1), (1,1) is the semicircle about 1/2 of radius sqrt(5)/2.
    auto E = make_euclidean(1);
    FillingPoint s{MPoint{0.0}, 1.0}, t{MPoint{1.0}, 1.0};
    FillingLine L = common_line(E, s, t);
    const double h = std::sqrt(5.0) / 2.0;
    CHECK(L.a().coords()[0] == doctest::Approx(0.5 - h).epsilon(1e-12));
    CHECK(L.a2().coords()[0] == doctest::Approx(0.5 + h).epsilon(1e-12));
    FillingLine it = common_line_iterative(E, s, t);
    CHECK(it.a().coords()[0] == doctest::Approx(0.5 - h).epsilon(1e-10));
    CHECK(it.a2().coords()[0] == doctest::Approx(0.5 + h).epsilon(1e-10));
    FillingLine sw = common_line(E, t, s);
    CHECK(sw.a().coords()[0] == doctest::Approx(0.5 + h).epsilon(1e-12));
    CHECK(L.contains(s));
    CHECK(L.contains(t));
    CHECK_THROWS_AS(common_line_iterative(E, s, s), IterationDivergence);
}

TEST_CASE("rho closed forms") {
    auto H = make_heisenberg(1);
    MPoint b(vec({0.5, 0.5, 0.5}));
    CHECK(rho(H, {b, 1.0}, {b, std::exp(1.0)}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho(H, {b, 2.0}, {b, 2.0}) == 0.0);

    auto E = make_euclidean(2);
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        Vec x = E->random_point(rng), y = E->random_point(rng);
        double r = std::exp(uniform(rng, -2, 1)), R = std::exp(uniform(rng, -2, 1));
        RhoResult both = rho_both(E, {MPoint(x), r}, {MPoint(y), R});
        double want = oracle(x, r, y, R);
        CHECK(both.vertical == doctest::Approx(want).epsilon(1e-6));
        CHECK(std::abs(both.vertical - both.cross_ratio) < 1e-9);
    }
}

TEST_CASE("Heisenberg two paths and line geodesy") {
    auto H = make_heisenberg(1);
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        FillingPoint s{MPoint(H->random_point(rng)), std::exp(uniform(rng, -1, 1))};
        FillingPoint t{MPoint(H->random_point(rng)), std::exp(uniform(rng, -1, 1))};
        RhoResult both = rho_both(H, s, t);
        CHECK(std::abs(both.vertical - both.cross_ratio) < 1e-8);
        FillingLine L = common_line(H, s, t);
        CHECK(line_geodesy_check(H, L.point(-1.0), L.point(0.2), L.point(1.5)) < 1e-8);
    }
}

TEST_CASE("hyperbolic plane over a horizontal line") {
    CHECK(hyperbolic_plane_distance(0, 1, 0, std::exp(2.0)) == doctest::Approx(2.0));
    auto H = make_heisenberg(1);
    OrientedLine sigma(H, vec({0.1, -0.3, 0.2}), vec({0.0, 1.0, 0.0}));
    std::vector<HalfPlaneSample> samples{{-1.0, 0.5}, {0.0, 1.0}, {0.3, 2.0}, {2.0, 0.2}};
    CHECK(hyp2_embed_check(H, sigma, samples) < 1e-6);
}

TEST_CASE("asymptotics on the real line") {
    auto E = make_euclidean(1);
    std::vector<double> rs{0.125, 0.0625, 0.03125};
    AsymptoticResult a = filling_asymptotic_check(E, MPoint{0.0}, MPoint{1.0}, rs);
    REQUIRE(a.E.size() == 3);
    for (std::size_t i = 0; i + 1 < a.E.size(); ++i) CHECK(std::abs(a.E[i + 1]) < std::abs(a.E[i]));
    AsymptoticResult b = filling_asymptotic_check(E, MPoint{1.0}, MPoint{0.0}, rs);
    for (std::size_t i = 0; i < a.E.size(); ++i) CHECK(a.E[i] == doctest::Approx(b.E[i]).epsilon(1e-9));

    GromovResult g = gromov_product_check(E, MPoint{0.0}, MPoint{1.0}, rs);
    CHECK(g.target == doctest::Approx(1.0));
    CHECK(g.error.back() < g.error.front());
    CHECK_THROWS_AS(gromov_product_check(E, MPoint{0.0}, MPoint{1.0}, {2.0}), HorosphereMiss);
}

TEST_CASE("endpoint estimates") {
    auto E = make_euclidean(1);
    for (double r : {0.2, 0.05, 0.01}) {
        EndpointResult e = endpoint_proximity_check(E, {MPoint{0.0}, r}, {MPoint{1.0}, r});
        CHECK(e.product_residual < 1e-9);
        CHECK(e.bound_ratio < 1.0);
        // |a w| ~ r^2 / |w0 w1|, a quarter of the bound.
        CHECK(e.bound_ratio == doctest::Approx(0.25).epsilon(0.25));
    }
}
