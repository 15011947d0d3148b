#include "ptolemy/errors.hpp"
#include "ptolemy/filling.hpp"
#include "ptolemy/geodesy.hpp"
#include "ptolemy/mobius_core.hpp"
#include "ptolemy/models.hpp"
#include "ptolemy/report.hpp"
#include "ptolemy/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ptolemy {

namespace {

using Out = CheckOutput;

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

bool heis(const Model& M) { return M.name() == "heisenberg"; }

MPoint rand_pt(const Model& M, Rng& rng, double scale = 1.0) {
    return MPoint(M.random_point(rng, scale));
}

// Random point at distance >= sep from avoid; near-coincident pairs make
// the maps built from them arbitrarily ill-conditioned.
MPoint rand_pt_away(const Model& M, Rng& rng, const MPoint& avoid, double sep = 0.5) {
    for (;;) {
        MPoint p = rand_pt(M, rng);
        if (avoid.is_infinity() || M.dist(p.coords(), avoid.coords()) >= sep) return p;
    }
}

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Metric from one of three representations of the same Moebius structure.
MetricPtr random_rep(const ModelPtr& model, Rng& rng, int kind) {
    auto base = std::make_shared<MetricRep>(model);
    if (kind == 0) return base;
    if (kind == 1)
        return std::make_shared<MetricRep>(model, rand_pt(*model, rng), log_uniform(rng, 0.1, 10));
    return metric_inversion(base, rand_pt(*model, rng), log_uniform(rng, 0.1, 10));
}

Quadruple random_quadruple(const Model& M, Rng& rng, const MPoint& omega) {
    Quadruple q;
    for (auto& p : q) p = rand_pt(M, rng);
    // Occasionally put the infinitely remote point into the quadruple.
    if (uniform(rng, 0, 1) < 0.2) q[static_cast<std::size_t>(uniform(rng, 0, 4)) % 4] = omega;
    return q;
}

double triangle_defect(const CrossRatioTriple& c) {
    double m = c.max();
    return std::max(0.0, 2.0 * m - (c.a + c.b + c.c)) / m;
}

double crt_deviation(const CrossRatioTriple& a, const CrossRatioTriple& b) {
    return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c)});
}

MPoint random_omega(const Model& M, Rng& rng) {
    return uniform(rng, 0, 1) < 0.5 ? MPoint::infinity() : rand_pt(M, rng);
}

OrientedLine random_line(const ModelPtr& model, Rng& rng) {
    return OrientedLine(model, model->random_point(rng), model->random_direction(rng));
}

Vec point_on_sphere(const Model& M, Rng& rng, const Vec& base, double r) {
    Vec u = M.random_point(rng);
    u = M.dilate(r / M.gauge(u), u);
    return M.mul(base, u);
}

// Turned circle with y at the identity, where the Heisenberg arithmetic
// along the circle is exact.
TurnedCircle random_turned_circle(const ModelPtr& model, Rng& rng) {
    Vec v = model->random_direction(rng);
    double a = uniform(rng, 0.3, 3.0), th = uniform(rng, 0.2, M_PI - 0.2);
    return turned_circle(model, a * v, model->identity(), th);
}

Out skip(const std::string& why) {
    Out o;
    o.note = "skipped: " + why;
    o.samples = 0;
    return o;
}

// ----- ptolemy -----

Out ptolemy_triangle(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        MetricPtr d = random_rep(model, rng, static_cast<int>(i % 3));
        Quadruple q = random_quadruple(*model, rng, d->omega());
        o.residuals.push_back(triangle_defect(crt(*d, q)));
    }
    return o;
}

Out ptolemy_inversion_closed(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    auto base = std::make_shared<MetricRep>(model);
    for (long i = 0; i < n; ++i) {
        MetricPtr dz = metric_inversion(base, rand_pt(*model, rng), log_uniform(rng, 0.1, 10));
        MPoint x = rand_pt(*model, rng), y = rand_pt(*model, rng), u = rand_pt(*model, rng);
        double xy = dz->finite(x, y), xu = dz->finite(x, u), uy = dz->finite(u, y);
        o.residuals.push_back(std::max(0.0, xy - xu - uy) / std::max({xy, xu, uy}));
    }
    return o;
}

std::vector<Curve> certified_circles(const ModelPtr& model, Rng& rng) {
    const Model& M = *model;
    std::vector<Curve> cs;
    for (int k = 0; k < 2; ++k) {
        OrientedLine l = random_line(model, rng);
        cs.push_back(line_curve(l));
        SpaceInversion phi{MPoint::infinity(), rand_pt(M, rng), log_uniform(rng, 0.3, 3)};
        cs.push_back(map_curve(as_mobius(model, phi), line_curve(l)));
    }
    if (M.horizontal_dim() >= 2) {
        TurnedCircle tc = random_turned_circle(model, rng);
        cs.push_back(tc.curve);
        SpaceInversion phi{MPoint::infinity(), rand_pt(M, rng), log_uniform(rng, 0.3, 3)};
        cs.push_back(map_curve(as_mobius(model, phi), tc.curve));
    }
    // A round circle in a plane on which the metric is Euclidean.
    bool flat_plane = heis(M) ? M.dim() >= 2 : M.dim() >= 2;
    if (flat_plane) {
        const int h = M.horizontal_dim();
        Vec e1 = M.embed_horizontal(Vec::Unit(h, 0));
        Vec e2 = M.embed_horizontal(Vec::Unit(h, heis(M) ? 2 : 1));
        cs.push_back(horizontal_circle(model, M.random_point(rng), e1, e2, uniform(rng, 0.3, 3)));
    }
    return cs;
}

Out ptolemy_circle_equality(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    MetricRep d(model);
    auto circles = certified_circles(model, rng);
    for (const Curve& c : circles)
        o.residuals.push_back(ptolemy_circle_residual(d, c, static_cast<int>(n), rng()));
    o.samples = n * static_cast<long>(circles.size());
    o.note = "one residual per circle: max over " + std::to_string(n) + " ordered quadruples";
    return o;
}

Out ptolemy_same_sphere(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    MetricRep d(model);
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        Vec b = M.random_point(rng);
        double r = log_uniform(rng, 0.1, 10);
        MPoint x(point_on_sphere(M, rng, b, r)), y(point_on_sphere(M, rng, b, r));
        CrossRatioTriple c = crt(d, {MPoint::infinity(), x, y, MPoint(b)});
        o.residuals.push_back(std::abs(c.a - c.b) / c.max());
    }
    return o;
}

Out ptolemy_scalar_cross_ratio(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        MetricPtr d0 = random_rep(model, rng, 0);
        MetricPtr d1 = random_rep(model, rng, 1 + static_cast<int>(i % 2));
        MPoint w = rand_pt(*model, rng), x = rand_pt(*model, rng), y = rand_pt(*model, rng),
               w2 = rand_pt(*model, rng);
        o.residuals.push_back(
            rel_diff(scalar_cross_ratio(*d0, w, x, y, w2), scalar_cross_ratio(*d1, w, x, y, w2)));
    }
    return o;
}

// ----- inversions -----

SpaceInversion random_inversion(const Model& M, Rng& rng, const MPoint& omega) {
    return {omega, rand_pt_away(M, rng, omega), log_uniform(rng, 0.2, 5)};
}

double chart_rel(const MPoint& a, const MPoint& b) {
    if (a.is_infinity() || b.is_infinity()) return a == b ? 0.0 : 1.0;
    return (a.coords() - b.coords()).norm() / (1.0 + b.coords().norm());
}

Out inversions_involution(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        SpaceInversion phi = random_inversion(*model, rng, random_omega(*model, rng));
        MPoint x = rand_pt(*model, rng);
        MPoint back = s_inversion_apply(model, phi, s_inversion_apply(model, phi, x));
        o.residuals.push_back(chart_rel(back, x));
    }
    return o;
}

Out inversions_fixed_point_free(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        SpaceInversion phi = random_inversion(*model, rng, MPoint::infinity());
        MPoint x(point_on_sphere(*model, rng, phi.base.coords(), phi.radius * log_uniform(rng, 0.2, 5)));
        MPoint y = s_inversion_apply(model, phi, x);
        o.residuals.push_back(phi.radius / model->dist(x.coords(), y.coords()));
    }
    o.note = "residual r / d(x, phi(x))";
    return o;
}

Out inversions_sphere(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        SpaceInversion phi = random_inversion(*model, rng, MPoint::infinity());
        const Vec& b = phi.base.coords();
        MPoint x(point_on_sphere(*model, rng, b, phi.radius));
        MPoint y = s_inversion_apply(model, phi, x);
        o.residuals.push_back(std::abs(model->dist(y.coords(), b) - phi.radius) / phi.radius);
    }
    return o;
}

Out inversions_induced_metric(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        SpaceInversion phi = random_inversion(M, rng, MPoint::infinity());
        const Vec& b = phi.base.coords();
        Vec x = M.random_point(rng), y = M.random_point(rng);
        Vec fx = s_inversion_apply(model, phi, MPoint(x)).coords();
        Vec fy = s_inversion_apply(model, phi, MPoint(y)).coords();
        double want = phi.radius * phi.radius * M.dist(x, y) / (M.dist(x, b) * M.dist(y, b));
        o.residuals.push_back(rel_diff(M.dist(fx, fy), want));
    }
    return o;
}

Out inversions_lines_through_base(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        SpaceInversion phi = random_inversion(M, rng, MPoint::infinity());
        OrientedLine l(model, phi.base.coords(), M.random_direction(rng));
        double s = phi.radius * uniform(rng, 0.2, 5) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
        MPoint y = s_inversion_apply(model, phi, l.point(s));
        // The image is l(-r^2/s).
        double want = -phi.radius * phi.radius / s;
        // Point equality in chart coordinates; a Cygan distance would only
        // resolve it to the square root of the coordinate rounding.
        o.residuals.push_back(chart_rel(y, l.point(want)));
    }
    return o;
}

template <class MakeMap>
Out crt_invariance(const ModelPtr& model, long n, Rng& rng, MakeMap make) {
    Out o;
    MetricRep d(model);
    for (long i = 0; i < n; ++i) {
        Mobius f = make(rng);
        Quadruple q;
        for (auto& p : q) p = rand_pt(*model, rng);
        Quadruple fq;
        for (std::size_t k = 0; k < 4; ++k) fq[k] = f(q[k]);
        o.residuals.push_back(crt_deviation(crt(d, q), crt(d, fq)));
    }
    return o;
}

Out inversions_crt_s_inversion(const ModelPtr& model, long n, Rng& rng) {
    return crt_invariance(model, n, rng, [&](Rng& r) {
        return as_mobius(model, random_inversion(*model, r, random_omega(*model, r)));
    });
}

Out inversions_crt_homothety(const ModelPtr& model, long n, Rng& rng) {
    return crt_invariance(model, n, rng, [&](Rng& r) {
        MPoint omega = random_omega(*model, r);
        return homothety(model, omega, rand_pt_away(*model, r, omega), log_uniform(r, 0.1, 10));
    });
}

Out inversions_crt_shift(const ModelPtr& model, long n, Rng& rng) {
    return crt_invariance(model, n, rng, [&](Rng& r) {
        MPoint omega = random_omega(*model, r);
        MPoint x = rand_pt_away(*model, r, omega);
        return shift(model, omega, x, rand_pt_away(*model, r, omega));
    });
}

Out inversions_homothety_scale(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        double lam = log_uniform(rng, 0.1, 10);
        Mobius h = homothety(model, MPoint::infinity(), rand_pt(M, rng), lam);
        Vec x = M.random_point(rng), y = M.random_point(rng);
        o.residuals.push_back(
            rel_diff(M.dist(h(MPoint(x)).coords(), h(MPoint(y)).coords()), lam * M.dist(x, y)));
    }
    return o;
}

// ----- duality -----

Out duality_busemann_formula(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        OrientedLine l = random_line(model, rng);
        BusemannFn b(l);
        Vec x = M.random_point(rng);
        double want = -M.horizontal(M.mul(M.inv(l.through()), x)).dot(M.horizontal(l.direction()));
        o.residuals.push_back(std::abs(b(x) - want));
    }
    o.note = "closed form -<pi(w^-1 x), v>";
    return o;
}

Out duality_derivatives(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine sigma = random_line(model, rng);
        MPoint x = rand_pt(*model, rng);
        o.residuals.push_back(duality_check(sigma, x).residual);
    }
    return o;
}

Out duality_on_line(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine l = random_line(model, rng);
        double s = uniform(rng, -5, 5);
        BusemannFn bp(l), bm(l.reversed());
        o.residuals.push_back(std::max(std::abs(bp(l.at(s)) + s), std::abs(bm(l.at(s)) - s)));
    }
    o.note = "b+(c(s)) = -s and b-(c(s)) = s";
    return o;
}

Out duality_flatness(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const int lines = 4;
    for (int k = 0; k < lines; ++k) {
        OrientedLine l = random_line(model, rng);
        BusemannFn bp(l), bm(l.reversed());
        for (long i = 0; i < n; ++i) {
            Vec x = model->random_point(rng, 2.0);
            o.residuals.push_back(std::abs(bp(x) + bm(x)));
        }
    }
    o.note = std::to_string(lines) + " lines";
    return o;
}

// ----- slope -----

OrientedLine line_through(const ModelPtr& model, const Vec& p, Rng& rng) {
    return OrientedLine(model, p, model->random_direction(rng));
}

Out slope_self(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine l = random_line(model, rng);
        o.residuals.push_back(std::abs(slope(l, l) + 1.0));
    }
    return o;
}

Out slope_symmetry(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine a = random_line(model, rng), b = random_line(model, rng);
        o.residuals.push_back(std::abs(slope(a, b) - slope(b, a)));
    }
    return o;
}

Out slope_closed_form(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        OrientedLine a = random_line(model, rng), b = random_line(model, rng);
        double want = -M.horizontal(a.direction()).dot(M.horizontal(b.direction()));
        o.residuals.push_back(std::abs(slope(a, b) - want));
    }
    o.note = "closed form -<u, v> (real part of the Hermitian product)";
    return o;
}

Out slope_orientation(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine a = random_line(model, rng), b = random_line(model, rng);
        double s = slope(a, b);
        o.residuals.push_back(
            std::max(std::abs(slope(a.reversed(), b) + s), std::abs(slope(a, b.reversed()) + s)));
    }
    return o;
}

Out slope_first_variation(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        Vec w = model->random_point(rng);
        OrientedLine l = line_through(model, w, rng), lp = line_through(model, w, rng);
        double s = uniform(rng, 0.3, 3) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
        o.residuals.push_back(first_variation_check(l, lp, s).residual);
    }
    return o;
}

Out slope_tangent(const ModelPtr& model, long n, Rng& rng) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    Out o;
    for (long i = 0; i < n; ++i) {
        TurnedCircle tc = random_turned_circle(model, rng);
        OrientedLine l = tangent_line(model, tc.curve, tc.ty);
        const Vec y = tc.curve(tc.ty).coords();
        double worst = 0, prev = -1;
        for (double dt : {1e-2, 1e-3, 1e-4}) {
            MPoint p = tc.curve(tc.ty + dt);
            double ratio = distance_to_line(p, l) / model->dist(y, p.coords());
            if (prev > 0) worst = std::max(worst, ratio / prev);
            prev = ratio;
        }
        o.residuals.push_back(worst);
    }
    o.note = "residual: largest ratio of successive dist(p, tangent)/|xp| over a decade";
    return o;
}

Out slope_arclength(const ModelPtr& model, long n, Rng& rng) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    Out o;
    const std::vector<double> rs{1e-1, 1e-2, 1e-3, 1e-4};
    for (long i = 0; i < n; ++i) {
        TurnedCircle tc = random_turned_circle(model, rng);
        double worst = 0;
        double prev = std::abs(arclength_defect(model, tc.curve, tc.ty, rs[0]));
        for (std::size_t k = 1; k < rs.size(); ++k) {
            double cur = std::abs(arclength_defect(model, tc.curve, tc.ty, rs[k]));
            worst = std::max(worst, cur / prev);
            prev = cur;
        }
        o.residuals.push_back(worst);
    }
    o.note = "residual: largest ratio of successive |L - r| / r^2 for r = 1e-1 ... 1e-4";
    return o;
}

Out slope_excess(const ModelPtr& model, long n, Rng& rng) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    Out o;
    for (long i = 0; i < n; ++i) {
        TurnedCircle tc = random_turned_circle(model, rng);
        ExcessResult ex =
            excess_check(model, tc.curve, tc.tx, tc.ty, excess_t_grid(model, tc.curve, tc.tx, tc.ty));
        o.residuals.push_back(std::max(0.0, ex.worst));
    }
    o.note = "residual: positive part of max_t (lhs - rhs)";
    return o;
}

// ----- zigzag -----

ZigzagSpec orthogonal_pair(const ModelPtr& model) {
    const int h = model->horizontal_dim();
    Vec o = model->identity();
    Vec e1 = model->embed_horizontal(Vec::Unit(h, 0)), e2 = model->embed_horizontal(Vec::Unit(h, 1));
    return {model, o, {OrientedLine(model, o, e1), OrientedLine(model, o, e2)}, {1.0, 1.0}, 14};
}

Out zigzag_speed(const ModelPtr& model, long, Rng&) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    ZigzagSpec spec = orthogonal_pair(model);
    ZigzagResult r = zigzag_limit(spec);
    Out o;
    o.residuals.push_back(std::abs(r.lambda - 1.0 / std::sqrt(2.0)));
    o.note = "certified depth " + std::to_string(r.certified_depth);
    return o;
}

Out zigzag_limit_slopes(const ModelPtr& model, long, Rng&) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    ZigzagSpec spec = orthogonal_pair(model);
    ZigzagResult r = zigzag_limit(spec);
    Out o;
    for (const auto& l : spec.lines)
        o.residuals.push_back(std::abs(slope(r.limit_line, l) + 1.0 / std::sqrt(2.0)));
    return o;
}

Out zigzag_drift(const ModelPtr& model, long, Rng&) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    if (!heis(*model)) return skip("no vertical directions in this model");
    ZigzagResult r = zigzag_limit(orthogonal_pair(model));
    Out o;
    for (std::size_t i = 1; i < r.drift.size(); ++i)
        o.residuals.push_back(std::abs(std::log(r.drift[i - 1] / r.drift[i] / 2.0)));
    o.note = "residual |ln(ratio / 2)| of successive vertical drifts";
    return o;
}

Out zigzag_degenerate(const ModelPtr& model, long, Rng& rng) {
    OrientedLine l = random_line(model, rng);
    ZigzagSpec spec{model, l.through(), {l, l.reversed()}, {1.0, 1.0}, 14};
    ZigzagResult r = zigzag_limit(spec);
    Out o;
    o.residuals.push_back((r.degenerate && r.analytic_degenerate) ? 0.0 : 1.0);
    return o;
}

Out zigzag_dilation(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        ZigzagSpec spec{model, M.identity(), {random_line(model, rng), random_line(model, rng)},
                        {uniform(rng, 0.2, 1), uniform(rng, 0.2, 1)}, 14};
        int p = 3 + static_cast<int>(i % 4);
        auto a = zigzag_polygon(spec, p, -16, 16);
        auto b = zigzag_polygon(spec, p + 1, -16, 16);
        double worst = 0;
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, (M.dilate(0.5, a[k]) - b[k]).norm() / (1.0 + b[k].norm()));
        o.residuals.push_back(worst);
    }
    o.note = "depth p+1 polygon is the half-scale image of depth p";
    return o;
}

Out zigzag_beta(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        std::size_t k = 2 + static_cast<std::size_t>(i % 2);
        ZigzagSpec spec{model, model->random_point(rng), {}, {}, 14};
        for (std::size_t j = 0; j < k; ++j) {
            spec.lines.push_back(random_line(model, rng));
            spec.S.push_back(uniform(rng, 0.2, 1));
        }
        ZigzagResult r = zigzag_limit(spec);
        if (r.degenerate) continue;
        o.residuals.push_back(zigzag_beta_check(spec, r, random_line(model, rng)));
    }
    return o;
}

std::vector<OrientedLine> coordinate_frame(const ModelPtr& model, const Vec& o) {
    std::vector<OrientedLine> f;
    const int h = model->horizontal_dim();
    for (int j = 0; j < h; ++j) f.emplace_back(model, o, model->embed_horizontal(Vec::Unit(h, j)));
    return f;
}

Out zigzag_orthogonalize_full(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    Vec origin = model->identity();
    auto frame = coordinate_frame(model, origin);
    for (long i = 0; i < n; ++i) {
        OrthogonalizeResult r =
            orthogonalize(model, MPoint::infinity(), frame, random_line(model, rng), origin);
        o.residuals.push_back(std::abs(r.sum_alpha_sq - 1.0));
    }
    return o;
}

Out zigzag_orthogonalize_partial(const ModelPtr& model, long n, Rng& rng) {
    if (model->horizontal_dim() < 2) return skip("needs two horizontal dimensions");
    Out o;
    Vec origin = model->identity();
    auto frame = coordinate_frame(model, origin);
    frame.resize(frame.size() / 2);
    for (long i = 0; i < n; ++i) {
        OrthogonalizeResult r =
            orthogonalize(model, MPoint::infinity(), frame, random_line(model, rng), origin);
        double worst = r.degenerate ? 1.0 : 0.0;
        for (const auto& f : frame) worst = std::max(worst, std::abs(slope(r.line, f)));
        o.residuals.push_back(worst);
    }
    return o;
}

// ----- fibration -----

Out fibration_lipschitz(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const MPoint inf;
    for (long i = 0; i < n; ++i) {
        MPoint x = rand_pt(*model, rng), y = rand_pt(*model, rng);
        double base = (project(model, inf, x) - project(model, inf, y)).norm();
        o.residuals.push_back(std::max(0.0, base - model->dist(x.coords(), y.coords())));
    }
    return o;
}

Out fibration_line_isometry(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const MPoint inf;
    for (long i = 0; i < n; ++i) {
        OrientedLine l = random_line(model, rng);
        double s1 = uniform(rng, -4, 4), s2 = uniform(rng, -4, 4);
        double base = (project(model, inf, l.point(s1)) - project(model, inf, l.point(s2))).norm();
        o.residuals.push_back(std::abs(base - std::abs(s1 - s2)));
    }
    return o;
}

Out fibration_k_line(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const MPoint inf;
    for (long i = 0; i < n; ++i) {
        MPoint x = rand_pt(*model, rng), f = rand_pt(*model, rng);
        Fiber F = fiber(model, inf, f);
        KLine k = k_line_connect(model, inf, x, F);
        // Fibers are the vertical cosets, so d(x, F) is the horizontal distance.
        double dF = (project(model, inf, x) - project(model, inf, f)).norm();
        double r = rel_diff(model->dist(x.coords(), k.hit), dF);
        if (!fiber_contains(model, F, MPoint(k.hit), 1e-9)) r = std::max(r, 1.0);
        r = std::max(r, model->dist(k.line.at(k.parameter), k.hit) / dF);
        o.residuals.push_back(r);
    }
    return o;
}

// ----- filling -----

FillingPoint random_filling_point(const Model& M, Rng& rng) {
    return {rand_pt(M, rng), log_uniform(rng, 0.1, 3)};
}

double rho_oracle(const Model& M, const FillingPoint& s, const FillingPoint& t) {
    const double r1 = s.height, r2 = t.height;
    if (heis(M)) {
        Vec g = M.mul(M.inv(s.base.coords()), t.base.coords());
        const int h = M.horizontal_dim();
        std::complex<double> A(g.head(h).squaredNorm() + r1 * r1 + r2 * r2, g[h]);
        return std::acosh(std::abs(A) / (2 * r1 * r2));
    }
    double dx2 = (s.base.coords() - t.base.coords()).squaredNorm();
    return hyperbolic_plane_distance(0.0, r1, std::sqrt(dx2), r2);
}

Out filling_rho_oracle(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint s = random_filling_point(*model, rng), t = random_filling_point(*model, rng);
        double want = rho_oracle(*model, s, t);
        o.residuals.push_back(std::abs(rho(model, s, t) - want) / std::max(want, 1.0));
    }
    o.note = heis(*model) ? "oracle cosh rho = | |dz|^2 + r^2 + r'^2 + i dt | / (2 r r')"
                          : "oracle: upper half-space distance";
    return o;
}

Out filling_two_path(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint s = random_filling_point(*model, rng), t = random_filling_point(*model, rng);
        RhoResult r = rho_both(model, s, t);
        o.residuals.push_back(std::abs(r.vertical - r.cross_ratio));
    }
    return o;
}

Out filling_line_geodesy(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint s = random_filling_point(*model, rng), t = random_filling_point(*model, rng);
        FillingLine L = common_line(model, s, t);
        double u[3] = {uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
        std::sort(u, u + 3);
        o.residuals.push_back(
            line_geodesy_check(model, L.point(u[0]), L.point(u[1]), L.point(u[2])));
    }
    return o;
}

Out filling_triangle(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint a = random_filling_point(*model, rng), b = random_filling_point(*model, rng),
                     c = random_filling_point(*model, rng);
        o.residuals.push_back(
            std::max(0.0, rho(model, a, c) - rho(model, a, b) - rho(model, b, c)));
    }
    return o;
}

Out filling_symmetry(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint s = random_filling_point(*model, rng), t = random_filling_point(*model, rng);
        o.residuals.push_back(std::abs(rho(model, s, t) - rho(model, t, s)) + rho(model, s, s));
    }
    return o;
}

Out filling_isometry(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    const Model& M = *model;
    for (long i = 0; i < n; ++i) {
        Mobius g, gi;
        switch (i % 4) {
            case 0: {
                Vec p = M.random_point(rng);
                g = left_translation(model, p);
                gi = left_translation(model, M.inv(p));
                break;
            }
            case 1: {
                double lam = log_uniform(rng, 0.2, 5);
                g = dilation(model, lam);
                gi = dilation(model, 1.0 / lam);
                break;
            }
            case 2: {
                Eigen::MatrixXd U = M.random_rotation(rng);
                g = rotation(model, U);
                gi = rotation(model, U.transpose());
                break;
            }
            default:
                g = unit_inversion(model);
                gi = g;
        }
        FillingPoint s = random_filling_point(M, rng), t = random_filling_point(M, rng);
        double r0 = rho(model, s, t);
        double r1 = rho(model, conjugate(model, g, gi, s), conjugate(model, g, gi, t));
        o.residuals.push_back(std::abs(r1 - r0) / std::max(r0, 1.0));
    }
    o.note = "translations, dilations, rotations and the unit inversion in turn";
    return o;
}

Out filling_hyp2(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        OrientedLine sigma = random_line(model, rng);
        std::vector<HalfPlaneSample> hs;
        for (int k = 0; k < 6; ++k) hs.push_back({uniform(rng, -3, 3), log_uniform(rng, 0.1, 3)});
        o.residuals.push_back(hyp2_embed_check(model, sigma, hs));
    }
    o.note = "one residual per line: max over 15 pairs, relative to max(rho_H, 1)";
    return o;
}

Out filling_round_trip(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        FillingPoint y = random_filling_point(*model, rng);
        SpaceInversion phi = as_inversion(y);
        FillingPoint back = from_inversion(model, phi);
        FillingPoint rec = recover_inversion(model, as_mobius(model, phi));
        double r = std::max({chart_rel(back.base, y.base), rel_diff(back.height, y.height),
                             chart_rel(rec.base, y.base), rel_diff(rec.height, y.height)});
        o.residuals.push_back(r);
    }
    return o;
}

std::pair<FillingPoint, FillingPoint> endpoint_pair(const Model& M, Rng& rng) {
    MPoint w0 = rand_pt(M, rng), w1 = rand_pt(M, rng);
    double D = M.dist(w0.coords(), w1.coords());
    return {{w0, D * std::ldexp(1.0, -static_cast<int>(uniform(rng, 3, 13)))},
            {w1, D * std::ldexp(1.0, -static_cast<int>(uniform(rng, 3, 13)))}};
}

Out filling_endpoint_product(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        auto [s0, s1] = endpoint_pair(*model, rng);
        o.residuals.push_back(endpoint_proximity_check(model, s0, s1).product_residual);
    }
    return o;
}

Out filling_endpoint_bound(const ModelPtr& model, long n, Rng& rng) {
    Out o;
    for (long i = 0; i < n; ++i) {
        auto [s0, s1] = endpoint_pair(*model, rng);
        o.residuals.push_back(endpoint_proximity_check(model, s0, s1).bound_ratio);
    }
    o.note = "residual |a_i w_i| / (4 r_i^2 / |w0 w1|)";
    return o;
}

// ----- asymptotics -----

std::vector<double> dyadic_schedule() {
    std::vector<double> rs;
    for (int k = 3; k <= 12; ++k) rs.push_back(std::ldexp(1.0, -k));
    return rs;
}

std::pair<MPoint, MPoint> asymptotic_ends(const Model& M) {
    Vec w1 = Vec::Zero(M.coord_dim());
    if (heis(M)) {
        w1[0] = 0.6;
        w1[1] = 0.2;
        w1[M.coord_dim() - 1] = 0.5;
    } else {
        w1[0] = 1.0;
    }
    return {MPoint(M.identity()), MPoint(w1)};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Out asymptotics_e_slope(const ModelPtr& model, long, Rng&) {
    auto [w0, w1] = asymptotic_ends(*model);
    AsymptoticResult a = filling_asymptotic_check(model, w0, w1, dyadic_schedule());
    Out o;
    o.residuals.push_back(std::abs(a.slope - 1.0));
    o.note = "log-log slope " + fmt(a.slope) + ", fitted c " + fmt(a.c);
    return o;
}

Out asymptotics_e_limit(const ModelPtr& model, long, Rng&) {
    auto [w0, w1] = asymptotic_ends(*model);
    AsymptoticResult a = filling_asymptotic_check(model, w0, w1, dyadic_schedule());
    Out o;
    for (double e : a.E) o.residuals.push_back(std::abs(e));
    o.note = "|E(r)| on r = 2^-3 ... 2^-12";
    return o;
}

Out asymptotics_gromov_slope(const ModelPtr& model, long, Rng&) {
    auto [w0, w1] = asymptotic_ends(*model);
    GromovResult g = gromov_product_check(model, w0, w1, dyadic_schedule());
    Out o;
    o.residuals.push_back(std::abs(g.slope - 1.0));
    o.note = "log-log slope " + fmt(g.slope);
    return o;
}

Out asymptotics_gromov_limit(const ModelPtr& model, long, Rng&) {
    auto [w0, w1] = asymptotic_ends(*model);
    GromovResult g = gromov_product_check(model, w0, w1, dyadic_schedule());
    Out o;
    for (double e : g.error) o.residuals.push_back(e / g.target);
    o.note = "relative error of exp(-(s0|s1)_b) against |a0 a1|";
    return o;
}

CheckDef def(std::string id, std::string suite, std::string anchor, long samples, bool scalable,
             double te, double th,
             std::function<CheckOutput(const ModelPtr&, long, Rng&)> run) {
    return {std::move(id), std::move(suite), std::move(anchor), samples, scalable, te, th, std::move(run)};
}

std::vector<CheckDef> build_registry() {
    std::vector<CheckDef> r;
    // ptolemy
    r.push_back(def("ptolemy.triangle", "ptolemy",
                    "|xz||yu| <= |xy||zu| + |xu||yz|", 100000, true, 1e-9, 1e-9, ptolemy_triangle));
    r.push_back(def("ptolemy.inversion_closed", "ptolemy",
                    "d_z(x,y) = r^2 d(x,y) / (d(z,x) d(z,y))", 10000, true, 1e-9, 1e-9,
                    ptolemy_inversion_closed));
    r.push_back(def("ptolemy.circle_equality", "ptolemy",
                    "|xz||yu| = |xy||zu| + |xu||yz|", 1000, true, 1e-9, 1e-9,
                    ptolemy_circle_equality));
    r.push_back(def("ptolemy.same_sphere", "ptolemy", "crt(omega,x,y,omega') = (a:a:c)", 10000,
                    true, 1e-9, 1e-9, ptolemy_same_sphere));
    r.push_back(def("ptolemy.scalar_cross_ratio", "ptolemy",
                    "<w,x,y,w'> = d(w,y) d(x,w') / (d(w,x) d(y,w'))", 10000, true, 1e-9, 1e-9,
                    ptolemy_scalar_cross_ratio));
    // inversions
    r.push_back(def("inversions.involution", "inversions", "phi^2 = id", 10000, true, 1e-9, 1e-9,
                    inversions_involution));
    r.push_back(def("inversions.fixed_point_free", "inversions", "phi(x) != x", 10000, true, 1.0,
                    1.0, inversions_fixed_point_free));
    r.push_back(def("inversions.sphere", "inversions", "phi(S_r(omega')) = S_r(omega')", 10000,
                    true, 1e-9, 1e-9, inversions_sphere));
    r.push_back(def("inversions.induced_metric", "inversions",
                    "d(phi x, phi y) = r^2 d(x,y) / (d(x,omega') d(y,omega'))", 10000, true, 1e-9,
                    1e-9, inversions_induced_metric));
    r.push_back(def("inversions.lines_through_base", "inversions", "phi(c(s)) = c(-r^2/s)", 10000,
                    true, 1e-9, 1e-9, inversions_lines_through_base));
    r.push_back(def("inversions.crt_s_inversion", "inversions", "crt(f(Q)) = crt(Q)", 10000, true,
                    1e-9, 1e-9, inversions_crt_s_inversion));
    r.push_back(def("inversions.crt_homothety", "inversions", "crt(f(Q)) = crt(Q)", 10000, true,
                    1e-9, 1e-9, inversions_crt_homothety));
    r.push_back(def("inversions.crt_shift", "inversions", "crt(f(Q)) = crt(Q)", 10000, true, 1e-9,
                    1e-9, inversions_crt_shift));
    r.push_back(def("inversions.homothety_scale", "inversions", "d(h x, h y) = lambda d(x,y)",
                    10000, true, 1e-9, 1e-9, inversions_homothety_scale));
    // duality
    r.push_back(def("duality.busemann_formula", "duality", "b(z,t) = -Re<z,v>", 1000, true, 1e-6,
                    1e-6, duality_busemann_formula));
    r.push_back(def("duality.derivatives", "duality",
                    "b^+-(x) = d^+-/dt ln d'(x,c(t)) at t = 0", 1000, true, 1e-5, 1e-5,
                    duality_derivatives));
    r.push_back(def("duality.on_line", "duality", "b(c(s)) = -s", 1000, true, 1e-6, 1e-6,
                    duality_on_line));
    r.push_back(def("duality.flatness", "duality", "b^+ + b^- = const", 1000, true, 1e-6, 1e-6,
                    duality_flatness));
    // slope
    r.push_back(def("slope.self", "slope", "slope(l;l) = -1", 200, true, 1e-8, 1e-8, slope_self));
    r.push_back(def("slope.symmetry", "slope", "slope(l';l) = slope(l;l')", 200, true, 1e-6, 1e-6,
                    slope_symmetry));
    r.push_back(def("slope.closed_form", "slope", "slope(l';l) = -Re<u,v>", 200, true, 1e-6, 1e-6,
                    slope_closed_form));
    r.push_back(def("slope.orientation", "slope", "slope(-l';l) = -slope(l';l) = slope(l';-l)", 200,
                    true, 1e-6, 1e-6, slope_orientation));
    r.push_back(def("slope.first_variation", "slope",
                    "d/dt d'(c'(s),c(t)) at t = 0 equals alpha' sign s", 200, true, 1e-5, 1e-5,
                    slope_first_variation));
    r.push_back(def("slope.tangent", "slope", "dist(y, l_x) = o(|xy|)", 50, true, 0.5, 0.5,
                    slope_tangent));
    r.push_back(def("slope.arclength", "slope", "L(xx') = |xx'| + o(|xx'|^2)", 50, true, 0.5, 0.5,
                    slope_arclength));
    r.push_back(def("slope.excess", "slope",
                    "b^+(x_t) + b^-(y_t) <= 2 alpha t - (1 - alpha^2) t^2 / a", 50, true, 1e-8,
                    1e-8, slope_excess));
    // zigzag
    r.push_back(def("zigzag.speed", "zigzag", "lambda = sqrt(sum_i s_i^2)", 1, false, 1e-4, 1e-4,
                    zigzag_speed));
    r.push_back(def("zigzag.limit_slopes", "zigzag", "slope(gamma, l_i) = -s_i / lambda", 1, false,
                    1e-4, 1e-4, zigzag_limit_slopes));
    r.push_back(def("zigzag.drift", "zigzag", "vertical drift ~ 2^-p", 1, false, std::log(1.2),
                    std::log(1.2), zigzag_drift));
    r.push_back(def("zigzag.degenerate", "zigzag", "L = {l, -l}, S = {1, 1}: gamma is a point", 1,
                    false, 0.5, 0.5, zigzag_degenerate));
    r.push_back(def("zigzag.dilation", "zigzag", "v_{p+1}^n = h_{1/2}(v_p^n)", 20, true, 1e-12,
                    1e-12, zigzag_dilation));
    r.push_back(def("zigzag.beta", "zigzag", "b(gamma(t)) = b(o) + beta t", 6, true, 1e-5, 1e-5,
                    zigzag_beta));
    r.push_back(def("zigzag.orthogonalize_full", "zigzag", "sum_i alpha_i^2 = 1", 100, true, 1e-6,
                    1e-6, zigzag_orthogonalize_full));
    r.push_back(def("zigzag.orthogonalize_partial", "zigzag", "sum_i alpha_i s_i = 0", 20, true,
                    1e-6, 1e-6, zigzag_orthogonalize_partial));
    // fibration
    r.push_back(def("fibration.lipschitz", "fibration", "|pi(x) pi(y)| <= |xy|", 10000, true,
                    1e-12, 1e-12, fibration_lipschitz));
    r.push_back(def("fibration.line_isometry", "fibration", "|pi(c(s)) pi(c(s'))| = |s - s'|",
                    1000, true, 1e-12, 1e-12, fibration_line_isometry));
    r.push_back(def("fibration.k_line", "fibration", "d(F,F') = |xx'|", 1000, true, 1e-9, 1e-9,
                    fibration_k_line));
    // filling
    r.push_back(def("filling.rho_oracle", "filling", "rho(s,t) = |ln <omega,x,y,omega'>|", 10000,
                    true, 1e-6, 1e-6, filling_rho_oracle));
    r.push_back(def("filling.two_path", "filling", "rho(s,t) = |ln <omega,x,y,omega'>|", 1000,
                    true, 1e-9, 1e-8, filling_two_path));
    r.push_back(def("filling.line_geodesy", "filling", "rho(s1,s3) = rho(s1,s2) + rho(s2,s3)",
                    1000, true, 1e-9, 1e-8, filling_line_geodesy));
    r.push_back(def("filling.triangle", "filling", "rho(s,u) <= rho(s,t) + rho(t,u)", 10000, true,
                    1e-9, 1e-9, filling_triangle));
    r.push_back(def("filling.symmetry", "filling", "rho(s,t) = rho(t,s), rho(s,s) = 0", 1000, true,
                    1e-9, 1e-9, filling_symmetry));
    r.push_back(def("filling.isometry", "filling", "rho(g*s, g*t) = rho(s,t)", 1000, true, 1e-9,
                    1e-9, filling_isometry));
    r.push_back(def("filling.hyp2", "filling", "Y_sigma is rho-isometric to H^2", 100, true, 1e-6,
                    1e-6, filling_hyp2));
    r.push_back(def("filling.round_trip", "filling", "|x omega'| |phi(x) omega'| = r^2", 1000,
                    true, 1e-9, 1e-9, filling_round_trip));
    r.push_back(def("filling.endpoint_product", "filling", "|a_0 w_i| |a_1 w_i| = r_i^2", 1000,
                    true, 1e-9, 1e-9, filling_endpoint_product));
    r.push_back(def("filling.endpoint_bound", "filling", "|a_i w_i| < 4 r_i^2 / |w_0 w_1|", 1000,
                    true, 1.0, 1.0, filling_endpoint_bound));
    // asymptotics
    r.push_back(def("asymptotics.e_slope", "asymptotics",
                    "e^{rho/2} r / |w_0 w_1| - 1 = O(r), slope 1", 10, false, 0.1, 0.1,
                    asymptotics_e_slope));
    r.push_back(def("asymptotics.e_limit", "asymptotics", "|E(r)| <= c_0 r / |w_0 w_1|", 10, false,
                    0.05, 0.05, asymptotics_e_limit));
    r.push_back(def("asymptotics.gromov_slope", "asymptotics",
                    "e^{-(a_0|a_1)_b} = |a_0 a_1|_omega, error slope 1", 10, false, 0.1, 0.1,
                    asymptotics_gromov_slope));
    r.push_back(def("asymptotics.gromov_limit", "asymptotics",
                    "e^{-(a_0|a_1)_b} = |a_0 a_1|_omega", 10, false, 0.05, 0.05,
                    asymptotics_gromov_limit));
    return r;
}

}  // namespace

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"ptolemy", "inversions", "duality",  "slope",
                                            "zigzag",  "fibration",  "filling", "asymptotics"};
    return s;
}

const std::vector<CheckDef>& check_registry() {
    static const std::vector<CheckDef> r = build_registry();
    return r;
}

}  // namespace ptolemy
