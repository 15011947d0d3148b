#pragma once

#include "ptolemy/model.hpp"

#include <array>
#include <memory>

namespace ptolemy {

// Distance of the form c * R^k, where R stands for the formal distance to the
// infinitely remote point. Products add exponents; comparisons keep only the
// leading power.
struct SymDist {
    double c = 0.0;
    int k = 0;
};

inline SymDist operator*(SymDist a, SymDist b) { return {a.c * b.c, a.k + b.k}; }

class ExtendedMetric {
public:
    virtual ~ExtendedMetric() = default;

    virtual MPoint omega() const = 0;
    // Distance between two points both different from omega.
    virtual double finite(const MPoint& x, const MPoint& y) const = 0;

    SymDist symbolic(const MPoint& x, const MPoint& y) const;
    // IEEE infinity for pairs with exactly one entry equal to omega.
    double operator()(const MPoint& x, const MPoint& y) const;
};

using MetricPtr = std::shared_ptr<const ExtendedMetric>;

// Model metric with infinitely remote point omega and scale lambda. For a
// finite omega the metric is lambda * d(x,y) / (d(omega,x) d(omega,y)).
class MetricRep : public ExtendedMetric {
public:
    MetricRep(ModelPtr model, MPoint omega = MPoint::infinity(), double scale = 1.0);

    MPoint omega() const override { return omega_; }
    double finite(const MPoint& x, const MPoint& y) const override;

    const ModelPtr& model() const { return model_; }
    double scale() const { return scale_; }

private:
    ModelPtr model_;
    MPoint omega_;
    double scale_;
};

// r^2 d(x,y) / (d(z,x) d(z,y)); z becomes infinitely remote.
class InvertedMetric : public ExtendedMetric {
public:
    InvertedMetric(MetricPtr base, MPoint z, double r);

    MPoint omega() const override { return z_; }
    double finite(const MPoint& x, const MPoint& y) const override;

private:
    MetricPtr base_;
    MPoint z_;
    double r2_;
};

using Quadruple = std::array<MPoint, 4>;

struct CrossRatioTriple {
    double a = 0.0, b = 0.0, c = 0.0;
    double max() const;
};

bool is_admissible(const Quadruple& q);

// (d(x,y)d(z,u) : d(x,z)d(y,u) : d(x,u)d(y,z)), normalized to max entry 1.
CrossRatioTriple crt(const ExtendedMetric& d, const Quadruple& q);

// <w,x,y,w'> = d(w,y) d(x,w') / (d(w,x) d(y,w')).
double scalar_cross_ratio(const ExtendedMetric& d, const MPoint& w, const MPoint& x,
                          const MPoint& y, const MPoint& w2);

MetricPtr metric_inversion(const MetricPtr& d, const MPoint& z, double r);

bool ptolemy_check(const ExtendedMetric& d, const Quadruple& q, double tol = 1e-9);

// d(x,z)d(y,u) - d(x,y)d(z,u) - d(x,u)d(y,z); with a point at omega the
// leading coefficient in R is returned.
double ptolemy_equality_residual(const ExtendedMetric& d, const Quadruple& q);

bool same_sphere(const ExtendedMetric& d, const MPoint& w, const MPoint& w2, const MPoint& x,
                 const MPoint& y, double tol = 1e-9);

}  // namespace ptolemy
