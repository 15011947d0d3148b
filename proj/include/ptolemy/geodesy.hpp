#pragma once

#include "ptolemy/models.hpp"

#include <optional>
#include <vector>

namespace ptolemy {

// b(x) = lim_{s -> +inf} d(x, c(s)) - d(w, c(s)) along an oriented line,
// with b(w) = 0. Evaluated on the schedule s_j = s0 * 2^j with polynomial
// extrapolation in 1/s and a Cauchy stop.
class BusemannFn {
public:
    explicit BusemannFn(OrientedLine line, std::optional<Vec> normalization = std::nullopt,
                        double tol = 1e-8, int max_levels = 40);

    double operator()(const Vec& x) const;
    double operator()(const MPoint& x) const { return (*this)(x.coords()); }

    const OrientedLine& line() const { return line_; }
    const Vec& normalization() const { return w_; }

private:
    OrientedLine line_;
    Vec w_;
    double tol_;
    int max_levels_;
};

double busemann_eval(const BusemannFn& b, const MPoint& x);

struct DualityResult {
    double b_plus = 0, b_minus = 0;
    // One-sided derivatives of ln d'(x, c(t)) at t = 0, taken towards +t and -t.
    double d_plus = 0, d_minus = 0;
    double residual = 0;
};

// sigma is a line through w = sigma(0); omega is the model's infinity and
// d' the metric inverted at w with radius 1. c(t) = sigma(1/t), c(0) = omega.
DualityResult duality_check(const OrientedLine& sigma, const MPoint& x, double h = 1e-4);

// max |b+ + b- - (b+ + b-)(w)| over the points.
double flatness_check(const OrientedLine& line, const std::vector<Vec>& points);

struct AffineFit {
    double alpha = 0, beta = 0, residual = 0;
};

// Least-squares fit of b o c'(t) = alpha t + beta on 33 points of [-T, T],
// b the Busemann function of l.
AffineFit slope_fit(const OrientedLine& lprime, const OrientedLine& l, double T = 8.0,
                    int points = 33);
double slope(const OrientedLine& lprime, const OrientedLine& l);

struct FirstVariation {
    double derivative = 0, expected = 0, residual = 0;
};

// Lines through a common point w; in the metric inverted at w both become
// lines through the model's infinity, parameterized by c(t) = l(1/t).
FirstVariation first_variation_check(const OrientedLine& l, const OrientedLine& lprime, double s,
                                     double h = 1e-4);

// Tangent Ptolemy line of sigma at sigma(tx), oriented along sigma.
OrientedLine tangent_line(const ModelPtr& model, const Curve& sigma, double tx);
double distance_to_line(const MPoint& y, const OrientedLine& l);

struct Fiber {
    Vec point;
};

Fiber fiber(const ModelPtr& model, const MPoint& omega, const MPoint& x);
Vec project(const ModelPtr& model, const MPoint& omega, const MPoint& x);
bool fiber_contains(const ModelPtr& model, const Fiber& f, const MPoint& x, double tol = 1e-12);

struct KLine {
    OrientedLine line;
    Vec hit;
    double parameter = 0;
};

KLine k_line_connect(const ModelPtr& model, const MPoint& omega, const MPoint& x, const Fiber& f);

// Parameter tau of sigma with d(sigma(t0), sigma(tau)) = r, searched from t0
// in direction dir (+1/-1) over at most `span` of the parameter.
double distance_parameter(const ModelPtr& model, const Curve& sigma, double t0, double r, int dir,
                          double span);

// (L - r) / r^2 for the arc from sigma(tx) to its distance-parameterized point at r.
double arclength_defect(const ModelPtr& model, const Curve& sigma, double tx, double r);

struct ExcessResult {
    double alpha = 0;
    double a = 0;
    // max over the grid of lhs - rhs; <= 0 means no violation.
    double worst = 0;
    std::vector<double> t, lhs, rhs;
};

// x = sigma(tx), y = sigma(ty) must lie on a common Ptolemy line; the arc from
// x to y follows increasing parameter.
ExcessResult excess_check(const ModelPtr& model, const Curve& sigma, double tx, double ty,
                          const std::vector<double>& t_grid);

struct SecondOrderResult {
    std::vector<double> r, defect;
    bool decreasing = false;
    ExcessResult excess;
};

// Bounded Ptolemy circle through x and y, two points of a common Ptolemy
// line, obtained by turning that line by angle theta about the pair {x, y}.
// The arc from x to y runs over [tx, ty]. In the Heisenberg model the
// endpoints are exact when y is the identity and x is horizontal.
struct TurnedCircle {
    Curve curve;
    double tx = 0, ty = 0;
};

TurnedCircle turned_circle(const ModelPtr& model, const Vec& x, const Vec& y, double theta);

// Grid of t values inside the domain of both distance parameterizations:
// fractions of 0.95 min(|x m|, |y m|), m the parameter midpoint of the arc.
std::vector<double> excess_t_grid(const ModelPtr& model, const Curve& sigma, double tx, double ty);

SecondOrderResult circle_second_order(const ModelPtr& model, const Curve& sigma, double tx,
                                      double ty, const std::vector<double>& r_schedule,
                                      const std::vector<double>& t_grid);

}  // namespace ptolemy
