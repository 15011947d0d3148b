#include "ptolemy/geodesy.hpp"

#include "ptolemy/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ptolemy {

BusemannFn::BusemannFn(OrientedLine line, std::optional<Vec> normalization, double tol,
                       int max_levels)
    : line_(std::move(line)),
      w_(normalization ? *normalization : line_.through()),
      tol_(tol),
      max_levels_(max_levels) {}

double BusemannFn::operator()(const Vec& x) const {
    const Model& M = *line_.model();
    double s0 = 4.0 * (M.dist(x, w_) + M.dist(w_, line_.through()) + 1.0);
    std::vector<std::vector<double>> T;
    // High extrapolation orders amplify the cancellation error in row[0].
    constexpr int max_order = 4;
    double prev = 0.0;
    int agreed = 0;
    for (int j = 0; j <= max_levels_; ++j) {
        double s = std::ldexp(s0, j);
        Vec c = line_.at(s);
        const int order = std::min(j, max_order);
        std::vector<double> row(order + 1);
        row[0] = M.dist(x, c) - M.dist(w_, c);
        // Neville extrapolation to 1/s = 0 with step ratio 2.
        for (int k = 1; k <= order; ++k)
            row[k] = row[k - 1] + (row[k - 1] - T[j - 1][k - 1]) / (std::ldexp(1.0, k) - 1.0);
        double est = row[order];
        T.push_back(std::move(row));
        agreed = (j >= 2 && std::abs(est - prev) < tol_) ? agreed + 1 : 0;
        if (agreed == 2) return est;
        prev = est;
    }
    throw NonConvergence("Busemann limit failed the Cauchy test");
}

double busemann_eval(const BusemannFn& b, const MPoint& x) { return b(x); }

DualityResult duality_check(const OrientedLine& sigma, const MPoint& x, double h) {
    const ModelPtr& model = sigma.model();
    const MPoint w = sigma.point(0.0);
    if (x.is_infinity() || x == w) throw DegenerateInput("x must differ from omega and omega'");
    auto base = std::make_shared<MetricRep>(model);
    MetricPtr dprime = metric_inversion(base, w, 1.0);
    auto c = [&](double t) { return t == 0.0 ? MPoint::infinity() : sigma.point(1.0 / t); };
    auto f = [&](double t) { return std::log((*dprime)(x, c(t))); };

    DualityResult r;
    double f0 = f(0.0);
    r.d_plus = (-3.0 * f0 + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
    r.d_minus = (-3.0 * f0 + 4.0 * f(-h) - f(-2.0 * h)) / (2.0 * h);
    r.b_plus = BusemannFn(sigma, w.coords())(x);
    r.b_minus = BusemannFn(sigma.reversed(), w.coords())(x);
    r.residual = std::max(std::abs(r.b_plus - r.d_plus), std::abs(r.b_minus - r.d_minus));
    return r;
}

double flatness_check(const OrientedLine& line, const std::vector<Vec>& points) {
    BusemannFn bp(line), bm(line.reversed(), line.through());
    double c = bp(line.through()) + bm(line.through());
    double worst = 0.0;
    for (const auto& p : points) worst = std::max(worst, std::abs(bp(p) + bm(p) - c));
    return worst;
}

AffineFit slope_fit(const OrientedLine& lprime, const OrientedLine& l, double T, int points) {
    BusemannFn b(l);
    Eigen::MatrixXd A(points, 2);
    Vec y(points);
    for (int i = 0; i < points; ++i) {
        double t = -T + 2.0 * T * i / (points - 1);
        A(i, 0) = t;
        A(i, 1) = 1.0;
        y[i] = b(lprime.at(t));
    }
    Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    AffineFit fit{coef[0], coef[1], (A * coef - y).cwiseAbs().maxCoeff()};
    return fit;
}

double slope(const OrientedLine& lprime, const OrientedLine& l) {
    const double T = 8.0;
    AffineFit fit = slope_fit(lprime, l, T);
    if (fit.residual > 1e-6 * T) throw NonAffine("Busemann function is not affine along the line");
    return fit.alpha;
}

FirstVariation first_variation_check(const OrientedLine& l, const OrientedLine& lprime, double s,
                                     double h) {
    if (s == 0.0) throw DegenerateInput("first variation needs s != 0");
    const ModelPtr& model = l.model();
    if (model->dist(l.through(), lprime.through()) != 0.0)
        throw DegenerateInput("lines must share their base point");
    const MPoint w = l.point(0.0);
    auto base = std::make_shared<MetricRep>(model);
    MetricPtr dprime = metric_inversion(base, w, 1.0);
    const MPoint y = lprime.point(1.0 / s);
    auto g = [&](double t) {
        return (*dprime)(y, t == 0.0 ? MPoint::infinity() : l.point(1.0 / t));
    };
    FirstVariation fv;
    fv.derivative = (-3.0 * g(0.0) + 4.0 * g(h) - g(2.0 * h)) / (2.0 * h);
    fv.expected = slope(lprime, l) * (s > 0 ? 1.0 : -1.0);
    fv.residual = std::abs(fv.derivative - fv.expected);
    return fv;
}

namespace {

Vec direction_between(const Model& M, const Vec& p, const Vec& q) {
    Vec h = M.horizontal(M.mul(M.inv(p), q));
    return M.embed_horizontal(h / h.norm());
}

}  // namespace

OrientedLine tangent_line(const ModelPtr& model, const Curve& sigma, double tx) {
    const MPoint x = sigma(tx);
    if (x.is_infinity()) throw DegenerateInput("tangent point must be finite");
    SpaceInversion phi{MPoint::infinity(), x, 1.0};
    // sigma minus x becomes a line under the inversion at x; parallel lines
    // through x are carried to parallel lines.
    std::vector<Vec> img;
    for (double off : {1.0 / 3.0, 2.0 / 3.0, 0.5, 0.25, 0.75}) {
        MPoint p = sigma(tx + off);
        if (p.is_infinity() || p == x) continue;
        MPoint q = s_inversion_apply(model, phi, p);
        if (q.is_finite()) img.push_back(q.coords());
        if (img.size() == 2) break;
    }
    if (img.size() < 2) throw DegenerateInput("curve too degenerate for a tangent");
    Vec dir = direction_between(*model, img[0], img[1]);
    OrientedLine l(model, x.coords(), dir);
    const double dt = 1e-4;
    MPoint ahead = sigma(tx + dt);
    double e = model->dist(x.coords(), ahead.coords());
    if (model->dist(ahead.coords(), l.at(e)) > model->dist(ahead.coords(), l.at(-e))) l = l.reversed();
    return l;
}

double distance_to_line(const MPoint& y, const OrientedLine& l) {
    const Model& M = *l.model();
    Vec rel = M.horizontal(M.mul(M.inv(l.through()), y.coords()));
    double s0 = rel.dot(M.horizontal(l.direction()));
    double D = M.dist(y.coords(), l.at(s0)) + 1e-300;
    auto f = [&](double s) { return M.dist(y.coords(), l.at(s)); };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(f, s0 - 2.0 * D, s0 + 2.0 * D, 52, iters);
    return std::min(r.second, D);
}

Fiber fiber(const ModelPtr& model, const MPoint& omega, const MPoint& x) {
    if (omega.is_finite() || x.is_infinity())
        throw DegenerateInput("fibration is represented in the chart where omega is infinity");
    (void)model;
    return {x.coords()};
}

Vec project(const ModelPtr& model, const MPoint& omega, const MPoint& x) {
    if (omega.is_finite() || x.is_infinity())
        throw DegenerateInput("fibration is represented in the chart where omega is infinity");
    return model->horizontal(x.coords());
}

bool fiber_contains(const ModelPtr& model, const Fiber& f, const MPoint& x, double tol) {
    return (model->horizontal(f.point) - model->horizontal(x.coords())).norm() <= tol;
}

KLine k_line_connect(const ModelPtr& model, const MPoint& omega, const MPoint& x, const Fiber& f) {
    Vec hx = project(model, omega, x);
    Vec h = model->horizontal(f.point) - hx;
    double s = h.norm();
    double scale = std::max({1.0, hx.norm(), model->horizontal(f.point).norm()});
    if (s <= 1e-14 * scale) throw NoSolution("point lies in the fiber");
    Vec dir = model->embed_horizontal(h / s);
    OrientedLine l(model, x.coords(), dir);
    return {l, l.at(s), s};
}

double distance_parameter(const ModelPtr& model, const Curve& sigma, double t0, double r, int dir,
                          double span) {
    const Vec x = sigma(t0).coords();
    auto dist = [&](double tau) { return model->dist(x, sigma(tau).coords()); };
    const int N = 512;
    double prev = 0.0, lo = t0;
    for (int i = 1; i <= N; ++i) {
        double tau = t0 + dir * span * i / N;
        double v = dist(tau);
        if (v < prev) throw ParameterizationFailure("distance to the base point is not monotone");
        if (v >= r) {
            double a = std::min(lo, tau), b = std::max(lo, tau);
            auto g = [&](double t) { return dist(t) - r; };
            boost::math::tools::eps_tolerance<double> tol(52);
            std::uintmax_t it = 200;
            auto root = boost::math::tools::toms748_solve(g, a, b, tol, it);
            return 0.5 * (root.first + root.second);
        }
        prev = v;
        lo = tau;
    }
    throw ParameterizationFailure("distance parameter outside the searched arc");
}

namespace {

double polygon_length(const Model& M, const Curve& sigma, double a, double b, int n) {
    double L = 0.0;
    Vec p = sigma(a).coords();
    for (int i = 1; i <= n; ++i) {
        Vec q = sigma(a + (b - a) * i / n).coords();
        L += M.dist(p, q);
        p = std::move(q);
    }
    return L;
}

}  // namespace

double arclength_defect(const ModelPtr& model, const Curve& sigma, double tx, double r) {
    double tau = distance_parameter(model, sigma, tx, r, +1, 0.5);
    // Inscribed polygons converge like n^-2; two Richardson steps.
    double L1 = polygon_length(*model, sigma, tx, tau, 64);
    double L2 = polygon_length(*model, sigma, tx, tau, 128);
    double L3 = polygon_length(*model, sigma, tx, tau, 256);
    double R1 = (4.0 * L2 - L1) / 3.0, R2 = (4.0 * L3 - L2) / 3.0;
    double L = (16.0 * R2 - R1) / 15.0;
    return (L - r) / (r * r);
}

ExcessResult excess_check(const ModelPtr& model, const Curve& sigma, double tx, double ty,
                          const std::vector<double>& t_grid) {
    if (!(ty > tx && ty < tx + 1.0)) throw DegenerateInput("need tx < ty < tx + 1");
    const Model& M = *model;
    const Vec x = sigma(tx).coords(), y = sigma(ty).coords();
    ExcessResult res;
    res.a = M.dist(x, y);
    Vec dir = direction_between(M, y, x);
    OrientedLine l(model, y, dir);
    // Cygan distances resolve coordinate rounding only to its square root.
    if (M.dist(l.at(res.a), x) > 1e-6 * std::max(1.0, res.a))
        throw DegenerateInput("x and y do not lie on a common Ptolemy line");
    BusemannFn bplus(l.reversed(), x), bminus(l, y);
    OrientedLine lx = tangent_line(model, sigma, tx);
    // Rate of change of |x_t y| at t = 0. With l oriented from y to x the
    // first variation gives the negative of slope(l_x, l).
    res.alpha = -slope(lx, l);
    double span_x = 0.5 * (ty - tx), span_y = span_x;
    res.worst = -std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        double px = distance_parameter(model, sigma, tx, t, +1, span_x);
        double py = distance_parameter(model, sigma, ty, t, -1, span_y);
        double lhs = bplus(sigma(px)) + bminus(sigma(py));
        double rhs = 2.0 * res.alpha * t - (1.0 - res.alpha * res.alpha) * t * t / res.a;
        res.t.push_back(t);
        res.lhs.push_back(lhs);
        res.rhs.push_back(rhs);
        res.worst = std::max(res.worst, lhs - rhs);
    }
    return res;
}

std::vector<double> excess_t_grid(const ModelPtr& model, const Curve& sigma, double tx,
                                  double ty) {
    const Vec x = sigma(tx).coords(), y = sigma(ty).coords(), m = sigma(0.5 * (tx + ty)).coords();
    const double tmax = 0.95 * std::min(model->dist(x, m), model->dist(y, m));
    std::vector<double> grid;
    for (double f : {1e-3, 1e-2, 0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.85, 1.0}) grid.push_back(f * tmax);
    return grid;
}

SecondOrderResult circle_second_order(const ModelPtr& model, const Curve& sigma, double tx,
                                      double ty, const std::vector<double>& r_schedule,
                                      const std::vector<double>& t_grid) {
    SecondOrderResult out;
    for (double r : r_schedule) {
        out.r.push_back(r);
        out.defect.push_back(arclength_defect(model, sigma, tx, r));
    }
    out.decreasing = true;
    for (std::size_t i = 1; i < out.defect.size(); ++i)
        if (!(std::abs(out.defect[i]) < std::abs(out.defect[i - 1]))) out.decreasing = false;
    out.excess = excess_check(model, sigma, tx, ty, t_grid);
    return out;
}

TurnedCircle turned_circle(const ModelPtr& model, const Vec& x, const Vec& y, double theta) {
    const Model& M = *model;
    if (M.horizontal_dim() < 2) throw DegenerateInput("turning needs two horizontal dimensions");
    const Vec rel = M.mul(M.inv(y), x);
    const double a = M.gauge(rel);
    if (!(a > 0)) throw DegenerateInput("x and y must differ");
    if (M.dist(rel, M.embed_horizontal(M.horizontal(rel))) > 1e-12 * a)
        throw DegenerateInput("x and y do not lie on a common Ptolemy line");
    // g(0) = x, g(inf) = y; the frame preimage of the line runs through 0, q^-1
    // and infinity.
    const Vec q = M.unit_inversion(M.mul(M.inv(y), x));
    Mobius g = left_translation(model, y) * unit_inversion(model) * left_translation(model, q);
    Vec u = -M.horizontal(q);
    u.normalize();
    const int h = M.horizontal_dim();
    Vec w(h);
    if (M.name() == "heisenberg") {
        for (int j = 0; j < h / 2; ++j) {
            w[2 * j] = -u[2 * j + 1];
            w[2 * j + 1] = u[2 * j];
        }
    } else {
        Eigen::Index k;
        u.cwiseAbs().minCoeff(&k);
        w = Vec::Unit(h, k) - u[k] * u;
        w.normalize();
    }
    const Vec dir = M.embed_horizontal(std::cos(theta) * u + std::sin(theta) * w);
    TurnedCircle out;
    // u = 1/2 gives x, u = 0 (mod 1) gives y; both are hit exactly.
    out.curve = [model, g, dir](double p) {
        double f = p - std::floor(p);
        if (f == 0.0) return g(MPoint::infinity());
        return g(MPoint(Vec(std::tan(M_PI * (f - 0.5)) * dir)));
    };
    out.tx = 0.5;
    out.ty = 1.0;
    return out;
}

}  // namespace ptolemy
