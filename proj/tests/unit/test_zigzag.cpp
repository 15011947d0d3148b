#include "ptolemy/zigzag.hpp"

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

}  // namespace

TEST_CASE("staircase polygon in the plane") {
    auto E = make_euclidean(2);
    ZigzagSpec spec{E, Vec::Zero(2),
                    {OrientedLine(E, Vec::Zero(2), vec({1, 0})), OrientedLine(E, Vec::Zero(2), vec({0, 1}))},
                    {1.0, 1.0}};
    auto v = zigzag_polygon(spec, 1, -2, 4);
    // index n maps to v[n + 2]
    CHECK((v[2] - vec({0, 0})).norm() == 0.0);
    CHECK((v[3] - vec({1, 0})).norm() < 1e-15);
    CHECK((v[4] - vec({1, 1})).norm() < 1e-15);
    CHECK((v[6] - vec({2, 2})).norm() < 1e-15);
    CHECK((v[1] - vec({0, -1})).norm() < 1e-15);
    CHECK((v[0] - vec({-1, -1})).norm() < 1e-15);
}

TEST_CASE("single line zigzag is the line") {
    auto H = make_heisenberg(1);
    OrientedLine l(H, H->identity(), vec({0.6, 0.8, 0}));
    ZigzagSpec spec{H, H->identity(), {l}, {1.0}};
    auto v = zigzag_polygon(spec, 1, 0, 3);
    for (int n = 0; n <= 3; ++n) CHECK((v[n] - l.at(n)).norm() < 1e-14);
    ZigzagResult r = zigzag_limit(spec);
    CHECK_FALSE(r.degenerate);
    CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("depth refinement keeps vertices in one fiber") {
    auto H = make_heisenberg(1);
    ZigzagSpec spec{H, vec({0.1, 0.2, 0.3}),
                    {OrientedLine(H, H->identity(), vec({1, 0, 0})), OrientedLine(H, H->identity(), vec({0, 1, 0}))},
                    {0.5, 0.5}};
    auto a = zigzag_polygon(spec, 3, -8, 8), b = zigzag_polygon(spec, 4, -16, 16);
    for (int k = -4; k <= 4; ++k) {
        const Vec& p = a[2 * k + 8];
        const Vec& q = b[4 * k + 16];
        CHECK((H->horizontal(p) - H->horizontal(q)).norm() < 1e-14);
    }
}

TEST_CASE("orthogonal pair converges to the diagonal") {
    auto H = make_heisenberg(1);
    OrientedLine l1(H, H->identity(), vec({1, 0, 0})), l2(H, H->identity(), vec({0, 1, 0}));
    ZigzagSpec spec{H, H->identity(), {l1, l2}, {0.5, 0.5}, 14};
    ZigzagResult r = zigzag_limit(spec);
    REQUIRE_FALSE(r.degenerate);
    CHECK(r.certified_depth <= 14);
    CHECK(r.lambda == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
    Vec dir = H->horizontal(r.limit_line.direction());
    CHECK((dir - vec({1, 1}) / std::sqrt(2.0)).norm() < 1e-4);
    CHECK(zigzag_slope_check(spec, r, 0) < 1e-4);
    CHECK(zigzag_slope_check(spec, r, 1) < 1e-4);
    // Drift halves per depth.
    for (std::size_t i = 4; i + 1 < r.drift.size(); ++i)
        CHECK(r.drift[i] / r.drift[i + 1] == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("opposite lines are degenerate") {
    auto H = make_heisenberg(1);
    OrientedLine l(H, H->identity(), vec({1, 0, 0}));
    ZigzagSpec spec{H, H->identity(), {l, l.reversed()}, {1.0, 1.0}};
    ZigzagResult r = zigzag_limit(spec);
    CHECK(r.degenerate);
    CHECK(r.analytic_degenerate);
}

TEST_CASE("orthogonalize") {
    auto H = make_heisenberg(1);
    const MPoint inf = MPoint::infinity();
    const Vec o = H->identity();
    OrientedLine e1(H, o, vec({1, 0, 0})), e2(H, o, vec({0, 1, 0}));
    const double th = 1.1;
    OrientedLine l(H, o, vec({std::cos(th), std::sin(th), 0}));

    OrthogonalizeResult none = orthogonalize(H, inf, {}, l, o);
    CHECK_FALSE(none.degenerate);
    CHECK((none.line.direction() - l.direction()).norm() < 1e-12);

    OrthogonalizeResult one = orthogonalize(H, inf, {e1}, l, o);
    REQUIRE_FALSE(one.degenerate);
    CHECK(one.sum_alpha_sq == doctest::Approx(std::cos(th) * std::cos(th)).epsilon(1e-6));
    CHECK(std::abs(slope(one.line, e1)) < 1e-6);

    OrthogonalizeResult full = orthogonalize(H, inf, {e1, e2}, l, o);
    CHECK(full.degenerate);
    CHECK(full.sum_alpha_sq == doctest::Approx(1.0).epsilon(1e-6));
}
