#include "ptolemy/filling.hpp"

#include "ptolemy/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptolemy {

namespace {

Vec unit_horizontal(const Model& M) {
    Vec h = Vec::Zero(M.horizontal_dim());
    h[0] = 1.0;
    return M.embed_horizontal(h);
}

double height_at(const ModelPtr& model, const Mobius& phi, const Vec& base, double probe_r) {
    const Model& M = *model;
    MPoint p(M.mul(base, M.dilate(probe_r, unit_horizontal(M))));
    MPoint q = phi(p);
    if (q.is_infinity()) throw DegenerateInput("probe hit the base point");
    return std::sqrt(M.dist(p.coords(), base) * M.dist(q.coords(), base));
}

void check_point(const FillingPoint& s) {
    if (s.base.is_infinity()) throw DegenerateInput("filling point base must be finite");
    if (!(s.height > 0.0) || !std::isfinite(s.height))
        throw DegenerateInput("filling point height must be positive");
}

double chart_scale(const FillingPoint& s, const FillingPoint& t) {
    return std::max({1.0, s.base.coords().norm(), t.base.coords().norm(), s.height, t.height});
}

MPoint attracting_fixed_point(const Mobius& h, const std::vector<Vec>& starts, double scale) {
    const long max_iter = 1000000;
    std::vector<Vec> found;
    for (const Vec& x0 : starts) {
        Vec x = x0;
        double prev = -1.0;
        bool ok = false;
        for (long n = 0; n < max_iter; ++n) {
            MPoint y = h(MPoint(x));
            if (y.is_infinity()) break;
            double step = (y.coords() - x).norm();
            x = y.coords();
            if (step == 0.0) {
                ok = true;
                break;
            }
            if (prev > 0.0) {
                double q = std::clamp(step / prev, 0.0, 1.0 - 1e-12);
                if (step / (1.0 - q) < 1e-12 * std::max(scale, x.norm())) {
                    // Run on while the map still contracts, down to rounding level.
                    for (int k = 0; k < 64; ++k) {
                        MPoint z = h(MPoint(x));
                        double s2 = (z.coords() - x).norm();
                        if (!(s2 < step)) break;
                        x = z.coords();
                        step = s2;
                    }
                    ok = true;
                    break;
                }
            }
            prev = step;
        }
        if (!ok) throw IterationDivergence("fixed-point iteration did not converge");
        found.push_back(x);
    }
    for (const auto& f : found)
        if ((f - found[0]).norm() > 1e-8 * std::max(scale, found[0].norm()))
            throw IterationDivergence("starting points reached different fixed points");
    return MPoint(found[0]);
}

}  // namespace

SpaceInversion as_inversion(const FillingPoint& y, const MPoint& omega) {
    check_point(y);
    if (omega.is_finite())
        throw DegenerateInput("half-space coordinates are taken with omega at infinity");
    return {MPoint::infinity(), y.base, y.height};
}

FillingPoint from_inversion(const ModelPtr& model, const SpaceInversion& phi) {
    if (phi.omega.is_infinity()) return {phi.base, phi.radius};
    return recover_inversion(model, as_mobius(model, phi));
}

FillingPoint recover_inversion(const ModelPtr& model, const Mobius& phi) {
    MPoint b = phi(MPoint::infinity());
    if (b.is_infinity()) throw DegenerateInput("map fixes infinity; not an s-inversion of the filling");
    double r = height_at(model, phi, b.coords(), 1.0);
    r = height_at(model, phi, b.coords(), r);
    return {b, r};
}

FillingPoint conjugate(const ModelPtr& model, const Mobius& g, const Mobius& g_inv,
                       const FillingPoint& s) {
    return recover_inversion(model, g * as_mobius(model, as_inversion(s)) * g_inv);
}

FillingLine::FillingLine(ModelPtr model, MPoint a, MPoint a2)
    : model_(std::move(model)), a_(std::move(a)), a2_(std::move(a2)) {
    if (a_ == a2_) throw DegenerateInput("line endpoints coincide");
    const ModelPtr& M = model_;
    Mobius phi0 = unit_inversion(M);
    if (a2_.is_infinity()) {
        g_ = left_translation(M, a_.coords());
        ginv_ = left_translation(M, M->inv(a_.coords()));
    } else if (a_.is_infinity()) {
        g_ = left_translation(M, a2_.coords()) * phi0;
        ginv_ = phi0 * left_translation(M, M->inv(a2_.coords()));
    } else {
        Vec p = M->unit_inversion(M->mul(M->inv(a2_.coords()), a_.coords()));
        g_ = left_translation(M, a2_.coords()) * phi0 * left_translation(M, p);
        ginv_ = left_translation(M, M->inv(p)) * phi0 * left_translation(M, M->inv(a2_.coords()));
    }
}

FillingPoint FillingLine::point(double u) const {
    SpaceInversion v{MPoint::infinity(), MPoint(model_->identity()), std::exp(u)};
    return recover_inversion(model_, g_ * as_mobius(model_, v) * ginv_);
}

bool FillingLine::contains(const FillingPoint& s, double tol) const {
    MPoint img = s_inversion_apply(model_, as_inversion(s), a_);
    if (img.is_infinity() || a2_.is_infinity()) return img == a2_ || (img.is_infinity() && a2_.is_infinity());
    double scale = std::max({1.0, a_.is_finite() ? a_.coords().norm() : 0.0, a2_.coords().norm()});
    return (img.coords() - a2_.coords()).norm() <= tol * scale;
}

FillingLine common_line_iterative(const ModelPtr& model, const FillingPoint& s,
                                  const FillingPoint& t) {
    check_point(s);
    check_point(t);
    if (s.base == t.base) {
        if (s.height == t.height) throw IterationDivergence("common line of a point with itself");
        return s.height < t.height ? FillingLine(model, s.base, MPoint::infinity())
                                   : FillingLine(model, MPoint::infinity(), s.base);
    }
    const double scale = chart_scale(s, t);
    Mobius S = as_mobius(model, as_inversion(s)), T = as_mobius(model, as_inversion(t));
    Vec mid = 0.5 * (s.base.coords() + t.base.coords());
    Rng rng(0x5eedULL);
    std::vector<Vec> starts;
    for (int k = 0; k < 8; ++k) starts.push_back(mid + scale * model->random_point(rng));
    MPoint a = attracting_fixed_point(S * T, starts, scale);
    MPoint a2 = attracting_fixed_point(T * S, starts, scale);
    // s(a) = a2 is ill-conditioned for tiny heights, so only the swap itself
    // is confirmed here; each end already carries its own certificate.
    MPoint sa = S(a);
    if (sa.is_infinity() || chart_distance(sa, a2) >= chart_distance(sa, a))
        throw IterationDivergence("fixed points are not swapped by the inversion");
    return FillingLine(model, a, a2);
}

FillingLine common_line(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t) {
    check_point(s);
    check_point(t);
    if (model->name() != "euclidean" || s.base == t.base) return common_line_iterative(model, s, t);
    // Semicircle through (x, r) and (y, R) orthogonal to the boundary.
    const Vec& x = s.base.coords();
    const Vec& y = t.base.coords();
    const double r = s.height, R = t.height;
    const double D = (y - x).norm();
    const Vec e = (y - x) / D;
    const double tau = (D * D + R * R - r * r) / (2.0 * D);
    const double rho0 = std::hypot(tau, r);
    const double sig = D - tau;
    double da = tau >= 0.0 ? r * r / (rho0 + tau) : rho0 - tau;
    double db = sig >= 0.0 ? R * R / (rho0 + sig) : rho0 - sig;
    return FillingLine(model, MPoint(Vec(x - da * e)), MPoint(Vec(y + db * e)));
}

namespace {

// The pair translated so that one of the bases sits at the identity.
struct LocalFrame {
    FillingPoint s, t;
    FillingLine line;
};

LocalFrame local_frame(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t,
                       const Vec& centre) {
    const Model& M = *model;
    Vec c = M.inv(centre);
    LocalFrame f;
    f.s = {MPoint(M.mul(c, s.base.coords())), s.height};
    f.t = {MPoint(M.mul(c, t.base.coords())), t.height};
    f.line = common_line(model, f.s, f.t);
    return f;
}

// log of the height of F in the frame of L: the level product of a unit probe.
double log_height(const Model& M, const FillingLine& L, const Mobius& F) {
    MPoint img = (L.frame_inverse() * F * L.frame())(MPoint(unit_horizontal(M)));
    return 0.5 * std::log(M.gauge(img.coords()));
}

double log_dist(const Model& M, const Vec& x, const Vec& y) { return std::log(M.dist(x, y)); }

// Moebius frame sending e0 to 0 and einf to infinity, up to an automorphism
// fixing both. Only the end nearer the origin is used as a translation; the
// other enters through its inversion, which stays small.
struct Frame {
    Mobius g, ginv;
};

Frame stable_frame(const ModelPtr& model, const Vec& e0, const Vec& einf) {
    const Model& M = *model;
    Mobius phi0 = unit_inversion(model);
    Frame f;
    if (M.gauge(einf) <= M.gauge(e0)) {
        Vec p = M.unit_inversion(M.mul(M.inv(einf), e0));
        f.g = left_translation(model, einf) * phi0 * left_translation(model, p);
        f.ginv = left_translation(model, M.inv(p)) * phi0 * left_translation(model, M.inv(einf));
    } else {
        Vec q = M.unit_inversion(M.mul(M.inv(e0), einf));
        f.g = left_translation(model, e0) * phi0 * left_translation(model, q) * phi0;
        f.ginv = phi0 * left_translation(model, M.inv(q)) * phi0 * left_translation(model, M.inv(e0));
    }
    return f;
}

double log_height(const Model& M, const Frame& fr, const Mobius& F) {
    MPoint img = (fr.ginv * F * fr.g)(MPoint(unit_horizontal(M)));
    return 0.5 * std::log(M.gauge(img.coords()));
}

}  // namespace

RhoResult rho_both(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t) {
    check_point(s);
    check_point(t);
    if (s.base == t.base) {
        double v = std::abs(std::log(t.height) - std::log(s.height));
        if (v == 0.0) return {0.0, 0.0};
        FillingLine L = common_line(model, s, t);
        MetricRep d(model);
        const Model& M = *model;
        Mobius S = as_mobius(model, as_inversion(s)), T = as_mobius(model, as_inversion(t));
        RhoResult out;
        out.vertical = std::abs(log_height(M, L, S) - log_height(M, L, T));
        MPoint p(M.mul(s.base.coords(), M.dilate(s.height, unit_horizontal(M))));
        MPoint q(M.mul(t.base.coords(), M.dilate(t.height, unit_horizontal(M))));
        out.cross_ratio = 0.5 * std::abs(std::log(scalar_cross_ratio(d, L.a(), p, q, L.a2())) +
                                         std::log(scalar_cross_ratio(d, L.a(), S(p), T(q), L.a2())));
        return out;
    }
    const Model& M = *model;
    // Distances near a base lose precision unless that base is the origin, so
    // each side is evaluated in coordinates centred at its own base.
    LocalFrame f0 = local_frame(model, s, t, s.base.coords());
    LocalFrame f1 = local_frame(model, s, t, t.base.coords());
    const Vec& a = f0.line.a().coords();
    const Vec& a2 = f1.line.a2().coords();
    Mobius S0 = as_mobius(model, as_inversion(f0.s)), T0 = as_mobius(model, as_inversion(f0.t));
    Mobius S1 = as_mobius(model, as_inversion(f1.s)), T1 = as_mobius(model, as_inversion(f1.t));
    const Vec e = unit_horizontal(M);

    RhoResult out;
    {
        // Frame A sends a to infinity (s side large), frame B sends a2 there.
        Frame A = stable_frame(model, f0.line.a2().coords(), f0.line.a().coords());
        Frame B = stable_frame(model, f1.line.a().coords(), f1.line.a2().coords());
        double hs_A = log_height(M, A, S0);
        double ht_B = log_height(M, B, T1);
        // B^-1 A swaps 0 and infinity, so heights obey h_B = kappa / h_A with
        // kappa read off any boundary point away from the ends.
        const double D = M.dist(s.base.coords(), t.base.coords());
        Vec best;
        double best_sep = -1.0;
        for (int k = 0; k < M.horizontal_dim(); ++k)
            for (double sg : {1.0, -1.0}) {
                Vec h = Vec::Zero(M.horizontal_dim());
                h[k] = sg * D;
                Vec y = M.embed_horizontal(h);
                double sep = std::min(M.dist(y, f0.line.a().coords()), M.dist(y, f0.line.a2().coords()));
                if (sep > best_sep) {
                    best_sep = sep;
                    best = y;
                }
            }
        Vec y1 = M.mul(M.mul(M.inv(t.base.coords()), s.base.coords()), best);
        double log_kappa = std::log(M.gauge(A.ginv(MPoint(best)).coords())) +
                           std::log(M.gauge(B.ginv(MPoint(y1)).coords()));
        out.vertical = std::abs(ht_B - (log_kappa - hs_A));
    }
    {
        // <a,p,q,a2> <a,s(p),t(q),a2> with p, q on the invariant spheres.
        Vec p0 = M.dilate(s.height, e), q1 = M.dilate(t.height, e);
        Vec sp0 = S0(MPoint(p0)).coords(), tq1 = T1(MPoint(q1)).coords();
        Vec q0 = M.mul(f0.t.base.coords(), q1), p1 = M.mul(f1.s.base.coords(), p0);
        Vec tq0 = T0(MPoint(q0)).coords(), sp1 = S1(MPoint(p1)).coords();
        double l = log_dist(M, a, q0) + log_dist(M, p1, a2) - log_dist(M, a, p0) - log_dist(M, q1, a2) +
                   log_dist(M, a, tq0) + log_dist(M, sp1, a2) - log_dist(M, a, sp0) -
                   log_dist(M, tq1, a2);
        out.cross_ratio = 0.5 * std::abs(l);
    }
    return out;
}

double rho(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t) {
    return rho_both(model, s, t).vertical;
}

double line_geodesy_check(const ModelPtr& model, const FillingPoint& s1, const FillingPoint& s2,
                          const FillingPoint& s3) {
    return std::abs(rho(model, s1, s3) - rho(model, s1, s2) - rho(model, s2, s3));
}

double hyperbolic_plane_distance(double u1, double r1, double u2, double r2) {
    double x = ((u1 - u2) * (u1 - u2) + (r1 - r2) * (r1 - r2)) / (2.0 * r1 * r2);
    return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double hyp2_embed_check(const ModelPtr& model, const OrientedLine& sigma,
                        const std::vector<HalfPlaneSample>& samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            FillingPoint a{sigma.point(samples[i].u), samples[i].r};
            FillingPoint b{sigma.point(samples[j].u), samples[j].r};
            double h = hyperbolic_plane_distance(samples[i].u, samples[i].r, samples[j].u, samples[j].r);
            worst = std::max(worst, std::abs(rho(model, a, b) - h) / std::max(h, 1.0));
        }
    return worst;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(std::abs(x[i]));
        my += std::log(std::abs(y[i]));
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = std::log(std::abs(x[i])) - mx;
        sxy += dx * (std::log(std::abs(y[i])) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

AsymptoticResult filling_asymptotic_check(const ModelPtr& model, const MPoint& w0,
                                          const MPoint& w1, const std::vector<double>& r_schedule) {
    const double D = model->dist(w0.coords(), w1.coords());
    AsymptoticResult out;
    for (double r : r_schedule) {
        if (r > D / 4.0) throw DegenerateInput("heights must not exceed a quarter of the base distance");
        double p = rho(model, {w0, r}, {w1, r});
        double E = std::expm1(0.5 * p + std::log(r) - std::log(D));
        out.r.push_back(r);
        out.E.push_back(E);
        out.c = std::max(out.c, std::abs(E) * D / r);
    }
    out.slope = loglog_slope(out.r, out.E);
    return out;
}

GromovResult gromov_product_check(const ModelPtr& model, const MPoint& a0, const MPoint& a1,
                                  const std::vector<double>& r_schedule) {
    const double D = model->dist(a0.coords(), a1.coords());
    FillingLine L(model, a0, a1);
    auto logh = [&](double u) { return std::log(L.point(u).height); };
    const double span = 40.0 + std::abs(std::log(D));
    std::uintmax_t it = 200;
    auto top = boost::math::tools::brent_find_minima([&](double u) { return -logh(u); }, -span, span,
                                                     52, it);
    const double utop = top.first, htop = -top.second;
    GromovResult out;
    out.target = D;
    for (double r : r_schedule) {
        const double lr = std::log(r);
        if (lr >= htop) throw HorosphereMiss("line does not reach the horosphere");
        auto g = [&](double u) { return logh(u) - lr; };
        auto solve = [&](int dir) {
            double far = utop;
            do far += dir * 8.0;
            while (g(far) > 0.0);
            boost::math::tools::eps_tolerance<double> tol(50);
            std::uintmax_t n = 200;
            auto br = boost::math::tools::toms748_solve(g, std::min(far, utop), std::max(far, utop),
                                                        tol, n);
            return 0.5 * (br.first + br.second);
        };
        FillingPoint s0 = L.point(solve(-1)), s1 = L.point(solve(+1));
        double b0 = -std::log(s0.height), b1 = -std::log(s1.height);
        double G = 0.5 * (b0 + b1 - rho(model, s0, s1));
        double est = std::exp(-G);
        out.r.push_back(r);
        out.estimate.push_back(est);
        out.error.push_back(std::abs(est - D));
    }
    out.slope = loglog_slope(out.r, out.error);
    return out;
}

EndpointResult endpoint_proximity_check(const ModelPtr& model, const FillingPoint& s0,
                                        const FillingPoint& s1) {
    const Model& M = *model;
    const Vec& w0 = s0.base.coords();
    const Vec& w1 = s1.base.coords();
    const double D = M.dist(w0, w1);
    if (std::max(s0.height, s1.height) > D / 4.0)
        throw DegenerateInput("heights must not exceed a quarter of the base distance");
    EndpointResult out;
    const FillingPoint* s[2] = {&s0, &s1};
    for (int i = 0; i < 2; ++i) {
        // Work in coordinates centred at w_i so small distances keep precision.
        Vec c = M.inv(s[i]->base.coords());
        FillingPoint t0{MPoint(M.mul(c, w0)), s0.height}, t1{MPoint(M.mul(c, w1)), s1.height};
        FillingLine L = common_line(model, t0, t1);
        if (L.a().is_infinity() || L.a2().is_infinity()) throw OrderingViolation("line end at infinity");
        const Vec& a0 = L.a().coords();
        const Vec& a1 = L.a2().coords();
        const Vec& u0 = t0.base.coords();
        const Vec& u1 = t1.base.coords();
        if (!(M.dist(a0, u0) < M.dist(a0, u1) && M.dist(a1, u1) < M.dist(a1, u0)))
            throw OrderingViolation("endpoints are not ordered a0, s0, s1, a1");
        const Vec& wi = i == 0 ? u0 : u1;
        double ri = s[i]->height;
        double prod = M.dist(a0, wi) * M.dist(a1, wi);
        out.product_residual = std::max(out.product_residual, std::abs(prod - ri * ri) / (ri * ri));
        const Vec& ai = i == 0 ? a0 : a1;
        out.bound_ratio = std::max(out.bound_ratio, M.dist(ai, wi) / (4.0 * ri * ri / D));
    }
    return out;
}

}  // namespace ptolemy
