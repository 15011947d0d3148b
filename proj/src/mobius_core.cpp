#include "ptolemy/mobius_core.hpp"

#include "ptolemy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptolemy {

SymDist ExtendedMetric::symbolic(const MPoint& x, const MPoint& y) const {
    const MPoint w = omega();
    bool xw = x == w, yw = y == w;
    if (xw && yw) return {0.0, 0};
    // Ratios d(x,w)/d(y,w) tend to 1, so each such factor carries coefficient 1.
    if (xw || yw) return {1.0, 1};
    double v = finite(x, y);
    if (!std::isfinite(v)) throw MixedInfinity("non-finite distance between points other than omega");
    return {v, 0};
}

double ExtendedMetric::operator()(const MPoint& x, const MPoint& y) const {
    SymDist s = symbolic(x, y);
    return s.k > 0 ? std::numeric_limits<double>::infinity() : s.c;
}

MetricRep::MetricRep(ModelPtr model, MPoint omega, double scale)
    : model_(std::move(model)), omega_(std::move(omega)), scale_(scale) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw DegenerateInput("metric scale must be positive");
    if (omega_.is_finite() && omega_.size() != model_->coord_dim())
        throw DegenerateInput("omega has wrong dimension");
}

double MetricRep::finite(const MPoint& x, const MPoint& y) const {
    if (omega_.is_infinity()) return scale_ * model_->dist(x.coords(), y.coords());
    if (x.is_infinity() && y.is_infinity()) return 0.0;
    const Vec& w = omega_.coords();
    if (x.is_infinity()) return scale_ / model_->dist(y.coords(), w);
    if (y.is_infinity()) return scale_ / model_->dist(x.coords(), w);
    return scale_ * model_->dist(x.coords(), y.coords()) /
           (model_->dist(w, x.coords()) * model_->dist(w, y.coords()));
}

InvertedMetric::InvertedMetric(MetricPtr base, MPoint z, double r)
    : base_(std::move(base)), z_(std::move(z)), r2_(r * r) {
    if (!(r > 0.0)) throw DegenerateInput("inversion radius must be positive");
}

double InvertedMetric::finite(const MPoint& x, const MPoint& y) const {
    if (z_ == base_->omega()) return r2_ * base_->finite(x, y);
    SymDist num = base_->symbolic(x, y);
    SymDist den = base_->symbolic(z_, x) * base_->symbolic(z_, y);
    // Each occurrence of the old omega appears once above and once below.
    return r2_ * num.c / den.c;
}

double CrossRatioTriple::max() const { return std::max({a, b, c}); }

bool is_admissible(const Quadruple& q) {
    for (int i = 0; i < 4; ++i) {
        int n = 0;
        for (int j = 0; j < 4; ++j) n += q[i] == q[j];
        if (n >= 3) return false;
    }
    return true;
}

namespace {

std::array<double, 3> leading(const std::array<SymDist, 3>& e) {
    int kmax = std::numeric_limits<int>::min();
    for (const auto& s : e)
        if (s.c != 0.0) kmax = std::max(kmax, s.k);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = (e[i].c != 0.0 && e[i].k == kmax) ? e[i].c : 0.0;
    return out;
}

std::array<SymDist, 3> products(const ExtendedMetric& d, const Quadruple& q) {
    const auto& [x, y, z, u] = q;
    return {d.symbolic(x, y) * d.symbolic(z, u), d.symbolic(x, z) * d.symbolic(y, u),
            d.symbolic(x, u) * d.symbolic(y, z)};
}

}  // namespace

CrossRatioTriple crt(const ExtendedMetric& d, const Quadruple& q) {
    if (!is_admissible(q)) throw NonAdmissible("a point occurs three or more times");
    auto e = leading(products(d, q));
    double m = std::max({e[0], e[1], e[2]});
    if (!(m > 0.0)) throw NonAdmissible("all cross-ratio entries vanish");
    return {e[0] / m, e[1] / m, e[2] / m};
}

double scalar_cross_ratio(const ExtendedMetric& d, const MPoint& w, const MPoint& x,
                          const MPoint& y, const MPoint& w2) {
    if (w == w2 || w == x || w == y || w2 == x || w2 == y)
        throw DegenerateQuadruple("cross-ratio points must be distinct");
    if (x == y) return 1.0;
    SymDist num = d.symbolic(w, y) * d.symbolic(x, w2);
    SymDist den = d.symbolic(w, x) * d.symbolic(y, w2);
    return num.c / den.c;
}

MetricPtr metric_inversion(const MetricPtr& d, const MPoint& z, double r) {
    return std::make_shared<InvertedMetric>(d, z, r);
}

bool ptolemy_check(const ExtendedMetric& d, const Quadruple& q, double tol) {
    CrossRatioTriple t = crt(d, q);
    double slack = tol * t.max();
    return t.a <= t.b + t.c + slack && t.b <= t.a + t.c + slack && t.c <= t.a + t.b + slack;
}

double ptolemy_equality_residual(const ExtendedMetric& d, const Quadruple& q) {
    if (!is_admissible(q)) throw NonAdmissible("a point occurs three or more times");
    auto e = leading(products(d, q));
    return e[1] - e[0] - e[2];
}

bool same_sphere(const ExtendedMetric& d, const MPoint& w, const MPoint& w2, const MPoint& x,
                 const MPoint& y, double tol) {
    if (w == w2) throw DegenerateInput("sphere poles coincide");
    if (x == w || x == w2 || y == w || y == w2) throw DegenerateInput("point coincides with a pole");
    if (x == y) return true;
    auto e = leading(products(d, {w, x, y, w2}));
    double m = std::max(e[0], e[1]);
    return std::abs(e[0] - e[1]) <= tol * m;
}

}  // namespace ptolemy
