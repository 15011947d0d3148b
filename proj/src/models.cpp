#include "ptolemy/models.hpp"

#include "ptolemy/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace ptolemy {

namespace {

MPoint inversion_at_infinity(const ModelPtr& model, const Vec& b, double r, const MPoint& x) {
    if (x.is_infinity()) return MPoint(b);
    Vec y = model->mul(model->inv(b), x.coords());
    if (y.isZero(0.0)) return MPoint::infinity();
    Vec z = model->dilate(r, model->unit_inversion(model->dilate(1.0 / r, y)));
    return MPoint(model->mul(b, z));
}

// Conjugates a map built for omega = infinity back to a general omega.
Mobius conjugate_from_infinity(const ModelPtr& model, const MPoint& omega, const Mobius& f) {
    return chart_at_inverse(model, omega) * f * chart_at(model, omega);
}

double wrap01(double u) { return u - std::floor(u); }

}  // namespace

MPoint s_inversion_apply(const ModelPtr& model, const SpaceInversion& phi, const MPoint& x) {
    if (phi.omega == phi.base) throw DegenerateInput("s-inversion needs omega != base");
    if (!(phi.radius > 0.0)) throw DegenerateInput("s-inversion radius must be positive");
    if (phi.omega.is_infinity()) return inversion_at_infinity(model, phi.base.coords(), phi.radius, x);
    Mobius k = chart_at(model, phi.omega);
    Vec b = k(phi.base).coords();
    return chart_at_inverse(model, phi.omega)(inversion_at_infinity(model, b, phi.radius, k(x)));
}

Mobius as_mobius(const ModelPtr& model, const SpaceInversion& phi) {
    return Mobius([model, phi](const MPoint& x) { return s_inversion_apply(model, phi, x); });
}

double distance(const MetricRep& d, const MPoint& x, const MPoint& y) { return d(x, y); }

Mobius homothety(const ModelPtr& model, const MPoint& omega, const MPoint& o, double lambda) {
    if (omega == o) throw DegenerateInput("homothety centre equals omega");
    if (!(lambda > 0.0)) throw DegenerateInput("homothety coefficient must be positive");
    Vec c = chart_at(model, omega)(o).coords();
    Mobius h = left_translation(model, c) * dilation(model, lambda) *
               left_translation(model, model->inv(c));
    return conjugate_from_infinity(model, omega, h);
}

Mobius shift(const ModelPtr& model, const MPoint& omega, const MPoint& x, const MPoint& x2) {
    if (x == omega || x2 == omega) throw DegenerateInput("shift endpoints must differ from omega");
    Mobius k = chart_at(model, omega);
    Vec a = k(x).coords(), b = k(x2).coords();
    return conjugate_from_infinity(model, omega, left_translation(model, model->mul(b, model->inv(a))));
}

OrientedLine::OrientedLine(ModelPtr model, Vec through, Vec direction)
    : model_(std::move(model)), through_(std::move(through)), dir_(std::move(direction)) {}

Vec OrientedLine::at(double s) const { return model_->mul(through_, s * dir_); }

MPoint OrientedLine::point(double s) const { return MPoint(at(s)); }

OrientedLine OrientedLine::reversed() const { return {model_, through_, -dir_}; }

OrientedLine OrientedLine::parallel_through(const Vec& p) const { return {model_, p, dir_}; }

OrientedLine ptolemy_line(const ModelPtr& model, const MPoint& omega, const MPoint& through,
                          const Vec& direction) {
    if (omega.is_finite())
        throw DegenerateInput("lines are represented in the chart where omega is infinity");
    if (through.is_infinity()) throw DegenerateInput("line must pass through a finite point");
    Vec h;
    if (direction.size() == model->coord_dim()) {
        h = model->horizontal(direction);
        if ((model->embed_horizontal(h) - direction).norm() > 1e-12 * direction.norm())
            throw NonHorizontalDirection("direction has a vertical component");
    } else if (direction.size() == model->horizontal_dim()) {
        h = direction;
    } else {
        throw DegenerateInput("direction has wrong dimension");
    }
    double n = h.norm();
    if (!(n > 0.0)) throw NonHorizontalDirection("zero horizontal direction");
    return {model, through.coords(), model->embed_horizontal(h / n)};
}

double ptolemy_circle_residual(const ExtendedMetric& d, const Curve& curve, int samples,
                               std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        std::array<double, 4> u;
        for (auto& v : u) v = uniform(rng, 0.0, 1.0);
        std::sort(u.begin(), u.end());
        Quadruple q{curve(u[0]), curve(u[1]), curve(u[2]), curve(u[3])};
        if (!is_admissible(q)) continue;
        CrossRatioTriple t = crt(d, q);
        worst = std::max(worst, std::abs(t.b - t.a - t.c));
    }
    return worst;
}

bool is_ptolemy_circle(const ExtendedMetric& d, const Curve& curve, int samples, double tol,
                       std::uint64_t seed) {
    return ptolemy_circle_residual(d, curve, samples, seed) <= tol;
}

Curve line_curve(const OrientedLine& l) {
    return [l](double u) {
        u = wrap01(u);
        if (u == 0.0) return MPoint::infinity();
        return l.point(std::tan(std::numbers::pi * (u - 0.5)));
    };
}

Curve horizontal_circle(const ModelPtr& model, const Vec& center, const Vec& e1, const Vec& e2,
                        double r) {
    return ellipse_curve(model, center, e1, e2, r, r);
}

Curve ellipse_curve(const ModelPtr& model, const Vec& center, const Vec& e1, const Vec& e2,
                    double a, double b) {
    // The plane spanned by e1, e2 must be an abelian subgroup isometric to R^2.
    if ((model->mul(e1, e2) - e1 - e2).norm() > 1e-12)
        throw DegenerateInput("e1, e2 do not span a flat horizontal plane");
    return [model, center, e1, e2, a, b](double u) {
        double th = 2.0 * std::numbers::pi * wrap01(u);
        Vec p = a * std::cos(th) * e1 + b * std::sin(th) * e2;
        return MPoint(model->mul(center, p));
    };
}

Curve map_curve(const Mobius& f, const Curve& c) {
    return [f, c](double u) { return f(c(u)); };
}

}  // namespace ptolemy
