#pragma once

#include "ptolemy/mobius_core.hpp"
#include "ptolemy/model.hpp"

#include <cstdint>
#include <functional>

namespace ptolemy {

// s-inversion swapping omega and base, with invariant sphere of radius r around
// base in the unit-scale metric whose infinitely remote point is omega.
struct SpaceInversion {
    MPoint omega;
    MPoint base;
    double radius = 1.0;
};

MPoint s_inversion_apply(const ModelPtr& model, const SpaceInversion& phi, const MPoint& x);
Mobius as_mobius(const ModelPtr& model, const SpaceInversion& phi);

double distance(const MetricRep& d, const MPoint& x, const MPoint& y);

// Fixes omega and o and scales the metric at omega by lambda.
Mobius homothety(const ModelPtr& model, const MPoint& omega, const MPoint& o, double lambda);
// Isometry of X_omega taking x to x2.
Mobius shift(const ModelPtr& model, const MPoint& omega, const MPoint& x, const MPoint& x2);

// Unit-speed Ptolemy line through `through` in the chart where omega is the
// model's infinity: c(s) = through * (s * direction).
class OrientedLine {
public:
    OrientedLine() = default;
    OrientedLine(ModelPtr model, Vec through, Vec direction);

    MPoint point(double s) const;
    Vec at(double s) const;
    OrientedLine reversed() const;
    // Same foliation direction through another point.
    OrientedLine parallel_through(const Vec& p) const;

    const ModelPtr& model() const { return model_; }
    const Vec& through() const { return through_; }
    const Vec& direction() const { return dir_; }

private:
    ModelPtr model_;
    Vec through_;
    Vec dir_;
};

OrientedLine ptolemy_line(const ModelPtr& model, const MPoint& omega, const MPoint& through,
                          const Vec& direction);

// Closed curve parameterized with period 1.
using Curve = std::function<MPoint(double)>;

// Largest Ptolemy-equality residual, relative to the largest product, over
// random ordered quadruples along the curve.
double ptolemy_circle_residual(const ExtendedMetric& d, const Curve& curve, int samples,
                               std::uint64_t seed);
bool is_ptolemy_circle(const ExtendedMetric& d, const Curve& curve, int samples, double tol,
                       std::uint64_t seed = 1);

// Whole line closed up through infinity: u in [0,1) -> c(tan(pi (u - 1/2))).
Curve line_curve(const OrientedLine& l);
// Circle of radius r around center in the plane spanned by horizontal unit
// vectors e1, e2 (orthonormal, with <e1,e2> real in the Heisenberg case).
Curve horizontal_circle(const ModelPtr& model, const Vec& center, const Vec& e1, const Vec& e2,
                        double r);
Curve map_curve(const Mobius& f, const Curve& c);
Curve ellipse_curve(const ModelPtr& model, const Vec& center, const Vec& e1, const Vec& e2,
                    double a, double b);

}  // namespace ptolemy
