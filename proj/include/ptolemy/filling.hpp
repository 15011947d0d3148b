#pragma once

#include "ptolemy/models.hpp"

#include <vector>

namespace ptolemy {

// Half-space coordinates (base in X_omega, height) of an s-inversion whose
// infinitely remote point omega is the model's infinity.
struct FillingPoint {
    MPoint base;
    double height = 1.0;
};

SpaceInversion as_inversion(const FillingPoint& y, const MPoint& omega = MPoint::infinity());
FillingPoint from_inversion(const ModelPtr& model, const SpaceInversion& phi);
// base = phi(inf), height^2 = d(x, base) d(phi(x), base).
FillingPoint recover_inversion(const ModelPtr& model, const Mobius& phi);
// g* s = g s g^-1.
FillingPoint conjugate(const ModelPtr& model, const Mobius& g, const Mobius& g_inv,
                       const FillingPoint& s);

// Line of the filling with ends a (the first point's side) and a2.
class FillingLine {
public:
    FillingLine() = default;
    FillingLine(ModelPtr model, MPoint a, MPoint a2);

    const MPoint& a() const { return a_; }
    const MPoint& a2() const { return a2_; }
    // Moebius map with frame(0) = a, frame(inf) = a2, and its inverse.
    const Mobius& frame() const { return g_; }
    const Mobius& frame_inverse() const { return ginv_; }
    // Image of (0, e^u) under the frame; u -> -inf tends to a.
    FillingPoint point(double u) const;
    bool contains(const FillingPoint& s, double tol = 1e-8) const;

private:
    ModelPtr model_;
    MPoint a_, a2_;
    Mobius g_, ginv_;
};

FillingLine common_line(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t);
// Generic path: attracting fixed points of s t and t s by iteration.
FillingLine common_line_iterative(const ModelPtr& model, const FillingPoint& s,
                                  const FillingPoint& t);

struct RhoResult {
    double vertical = 0;
    double cross_ratio = 0;
};

double rho(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t);
RhoResult rho_both(const ModelPtr& model, const FillingPoint& s, const FillingPoint& t);

double line_geodesy_check(const ModelPtr& model, const FillingPoint& s1, const FillingPoint& s2,
                          const FillingPoint& s3);

// Distance in the upper half plane between (u1, r1) and (u2, r2).
double hyperbolic_plane_distance(double u1, double r1, double u2, double r2);

struct HalfPlaneSample {
    double u = 0;
    double r = 1;
};

// max |rho - rho_H| / max(rho_H, 1) over pairs of (sigma(u), r).
double hyp2_embed_check(const ModelPtr& model, const OrientedLine& sigma,
                        const std::vector<HalfPlaneSample>& samples);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct AsymptoticResult {
    std::vector<double> r, E;
    double slope = 0;
    double c = 0;
};

// E(r) = exp(rho/2) r / |w0 w1| - 1 for s_i = (w_i, r).
AsymptoticResult filling_asymptotic_check(const ModelPtr& model, const MPoint& w0,
                                          const MPoint& w1, const std::vector<double>& r_schedule);

struct GromovResult {
    std::vector<double> r, estimate, error;
    double target = 0;
    double slope = 0;
};

GromovResult gromov_product_check(const ModelPtr& model, const MPoint& a0, const MPoint& a1,
                                  const std::vector<double>& r_schedule);

struct EndpointResult {
    double product_residual = 0;
    // max_i |a_i w_i| / (4 r_i^2 / |w0 w1|); the bound holds iff < 1.
    double bound_ratio = 0;
};

EndpointResult endpoint_proximity_check(const ModelPtr& model, const FillingPoint& s0,
                                        const FillingPoint& s1);

}  // namespace ptolemy
