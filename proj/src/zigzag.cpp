#include "ptolemy/zigzag.hpp"

#include "ptolemy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ptolemy {

namespace {

constexpr int kGrid = 3;  // t-grid spacing sum(S) / 2^kGrid

void check_spec(const ZigzagSpec& spec) {
    if (spec.lines.empty() || spec.lines.size() != spec.S.size())
        throw DegenerateInput("zigzag needs as many step lengths as lines");
    double sum = 0.0;
    for (double s : spec.S) {
        if (s < 0.0) throw DegenerateInput("negative zigzag step");
        sum += s;
    }
    if (!(sum > 0.0)) throw DegenerateInput("zigzag steps sum to zero");
}

Vec step(const ZigzagSpec& spec, std::size_t i, double scale) {
    return (spec.S[i] * scale) * spec.lines[i].direction();
}

}  // namespace

std::vector<Vec> zigzag_polygon(const ZigzagSpec& spec, int p, long n_lo, long n_hi) {
    check_spec(spec);
    if (p < 1 || n_lo > 0 || n_hi < 0) throw DegenerateInput("bad zigzag polygon request");
    const Model& M = *spec.model;
    const long k = static_cast<long>(spec.lines.size());
    const double scale = std::ldexp(1.0, 1 - p);
    std::vector<Vec> out(n_hi - n_lo + 1);
    out[-n_lo] = spec.o;
    Vec v = spec.o;
    for (long n = 1; n <= n_hi; ++n) {
        v = M.mul(v, step(spec, (n - 1) % k, scale));
        out[n - n_lo] = v;
    }
    v = spec.o;
    for (long n = 0; n > n_lo; --n) {
        long i = ((n - 1) % k + k) % k;
        v = M.mul(v, -step(spec, i, scale));
        out[n - 1 - n_lo] = v;
    }
    return out;
}

namespace {

// gamma_p at t_j = j sum(S) / 2^kGrid for |j| <= J, via full cycles only.
std::vector<Vec> sample_depth(const ZigzagSpec& spec, int p, int J) {
    const Model& M = *spec.model;
    const std::size_t k = spec.lines.size();
    const long cycles_per_cell = 1L << (p - 1 - kGrid);
    const double scale = std::ldexp(1.0, 1 - p);
    std::vector<Vec> out(2 * J + 1);
    out[J] = spec.o;
    Vec v = spec.o;
    for (int j = 1; j <= J; ++j) {
        for (long c = 0; c < cycles_per_cell; ++c)
            for (std::size_t i = 0; i < k; ++i) v = M.mul(v, step(spec, i, scale));
        out[J + j] = v;
    }
    v = spec.o;
    for (int j = 1; j <= J; ++j) {
        for (long c = 0; c < cycles_per_cell; ++c)
            for (std::size_t i = k; i-- > 0;) v = M.mul(v, -step(spec, i, scale));
        out[J - j] = v;
    }
    return out;
}

}  // namespace

ZigzagResult zigzag_limit(const ZigzagSpec& spec) {
    check_spec(spec);
    if (spec.p_max < 6) throw DegenerateInput("zigzag limit needs p_max >= 6");
    const Model& M = *spec.model;
    const double sumS = std::accumulate(spec.S.begin(), spec.S.end(), 0.0);
    const int J = 1 << (kGrid + 1);
    const double T = 2.0 * sumS;
    const double C = 8.0 * T * sumS;

    ZigzagResult res;
    for (int j = -J; j <= J; ++j) res.t.push_back(j * sumS / (1 << kGrid));

    std::vector<Vec> prev;
    int run = 0;
    const Vec oinv = M.inv(spec.o);
    for (int p = kGrid + 1; p <= spec.p_max; ++p) {
        std::vector<Vec> cur = sample_depth(spec, p, J);
        double drift = 0.0;
        for (const auto& g : cur) {
            Vec rel = M.mul(oinv, g);
            drift = std::max(drift, (rel - M.embed_horizontal(M.horizontal(rel))).norm());
        }
        res.depths.push_back(p);
        res.drift.push_back(drift);
        if (!prev.empty()) {
            double gap = 0.0;
            for (std::size_t j = 0; j < cur.size(); ++j) gap = std::max(gap, (cur[j] - prev[j]).norm());
            double bound = C * std::ldexp(1.0, -(p - 1));
            res.cauchy_gap.push_back(gap);
            res.cauchy_bound.push_back(bound);
            if (gap <= bound) {
                if (++run == 1) res.certified_depth = p - 1;
            } else {
                run = 0;
                res.certified_depth = -1;
            }
        }
        prev = std::move(cur);
    }
    if (run < 3) throw NonCauchy("zigzag depths fail the Cauchy schedule");
    res.gamma = std::move(prev);

    for (const auto& a : res.gamma)
        for (const auto& b : res.gamma) res.diameter = std::max(res.diameter, M.dist(a, b));
    res.degenerate = res.diameter < 1e-6 * sumS;

    // Analytic criterion over the frame of horizontal coordinate directions.
    res.analytic_degenerate = true;
    for (int f = 0; f < M.horizontal_dim(); ++f) {
        Vec h = Vec::Zero(M.horizontal_dim());
        h[f] = 1.0;
        OrientedLine frame(spec.model, spec.o, M.embed_horizontal(h));
        double beta = 0.0;
        for (std::size_t i = 0; i < spec.lines.size(); ++i)
            beta += slope(spec.lines[i].parallel_through(spec.o), frame) * spec.S[i];
        if (std::abs(beta) >= 1e-6 * sumS) res.analytic_degenerate = false;
    }
    if (res.degenerate) return res;

    double num = 0.0, den = 0.0;
    std::vector<double> dist(res.t.size());
    for (std::size_t j = 0; j < res.t.size(); ++j) {
        dist[j] = M.dist(spec.o, res.gamma[j]);
        num += std::abs(res.t[j]) * dist[j];
        den += res.t[j] * res.t[j];
    }
    res.lambda = num / den;
    for (std::size_t j = 0; j < res.t.size(); ++j)
        res.speed_residual = std::max(res.speed_residual, std::abs(dist[j] - res.lambda * std::abs(res.t[j])));

    Vec h = M.horizontal(M.mul(oinv, res.gamma.back()));
    res.limit_line = OrientedLine(spec.model, spec.o, M.embed_horizontal(h / h.norm()));
    return res;
}

double zigzag_slope_check(const ZigzagSpec& spec, const ZigzagResult& res, std::size_t i) {
    if (res.degenerate) throw DegenerateInput("slope check on a degenerate zigzag");
    const double sumS = std::accumulate(spec.S.begin(), spec.S.end(), 0.0);
    double s = slope(res.limit_line, spec.lines.at(i).parallel_through(spec.o));
    return std::abs(s + spec.S[i] / (sumS * res.lambda));
}

double zigzag_beta_check(const ZigzagSpec& spec, const ZigzagResult& res, const OrientedLine& l) {
    const double sumS = std::accumulate(spec.S.begin(), spec.S.end(), 0.0);
    double beta = 0.0;
    for (std::size_t i = 0; i < spec.lines.size(); ++i) beta += slope(spec.lines[i], l) * spec.S[i];
    beta /= sumS;
    BusemannFn b(l);
    double b0 = b(spec.o), worst = 0.0;
    for (std::size_t j = 0; j < res.t.size(); ++j)
        worst = std::max(worst, std::abs(b(res.gamma[j]) - b0 - beta * res.t[j]));
    return worst;
}

OrthogonalizeResult orthogonalize(const ModelPtr& model, const MPoint& omega,
                                  const std::vector<OrientedLine>& existing, const OrientedLine& l,
                                  const Vec& o, int p_max) {
    if (omega.is_finite())
        throw DegenerateInput("orthogonalization works in the chart where omega is infinity");
    OrthogonalizeResult out;
    OrientedLine lo = l.parallel_through(o);
    double alpha = 0.0;
    for (const auto& li : existing) {
        OrientedLine f = li.parallel_through(o);
        double a = slope(lo, f);
        if (a < 0.0) {
            f = f.reversed();
            a = -a;
        }
        out.oriented_frame.push_back(f);
        out.alphas.push_back(a);
        out.sum_alpha_sq += a * a;
        alpha += a;
    }
    if (existing.empty()) {
        out.line = lo;
        return out;
    }
    if (std::abs(out.sum_alpha_sq - 1.0) < 1e-6) {
        out.degenerate = true;
        return out;
    }
    ZigzagSpec spec{model, o, out.oriented_frame, {}, p_max};
    for (double a : out.alphas) spec.S.push_back(a / (1.0 + alpha));
    spec.lines.push_back(lo);
    spec.S.push_back(1.0 / (1.0 + alpha));
    ZigzagResult z = zigzag_limit(spec);
    if (z.degenerate) {
        out.degenerate = true;
        return out;
    }
    out.line = z.limit_line;
    return out;
}

}  // namespace ptolemy
