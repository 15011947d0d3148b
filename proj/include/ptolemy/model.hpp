#pragma once

#include "ptolemy/mpoint.hpp"
#include "ptolemy/sampling.hpp"

#include <functional>
#include <memory>
#include <string>

namespace ptolemy {

// A boundary model realized as a nilpotent group with a left-invariant
// Ptolemy metric, a one-parameter dilation group and a unit inversion
// swapping the identity with infinity. Points are finite coordinate vectors;
// infinity is handled by the callers.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual int coord_dim() const = 0;
    virtual int horizontal_dim() const = 0;

    virtual double dist(const Vec& x, const Vec& y) const = 0;
    virtual Vec mul(const Vec& a, const Vec& b) const = 0;
    virtual Vec inv(const Vec& a) const = 0;
    virtual Vec dilate(double lambda, const Vec& x) const = 0;
    // Unit s-inversion with omega = infinity, base = identity, radius 1.
    virtual Vec unit_inversion(const Vec& x) const = 0;

    // Horizontal coordinates (the base of the canonical fibration).
    virtual Vec horizontal(const Vec& x) const = 0;
    virtual Vec embed_horizontal(const Vec& h) const = 0;
    // Unit directions of Ptolemy lines in this chart are exactly the
    // embedded horizontal unit vectors.
    virtual bool is_horizontal(const Vec& direction, double tol = 1e-12) const = 0;
    // Real inner product on horizontal coordinates for which slopes of
    // lines through a common point are -<u,v>.
    double horizontal_dot(const Vec& u, const Vec& v) const { return u.dot(v); }

    // Linear isometry acting on horizontal coordinates (orthogonal, resp. unitary).
    virtual Vec rotate(const Eigen::MatrixXd& U, const Vec& x) const = 0;
    virtual Eigen::MatrixXd random_rotation(Rng& rng) const = 0;

    Vec identity() const { return Vec::Zero(coord_dim()); }
    double gauge(const Vec& x) const { return dist(identity(), x); }
    Vec random_point(Rng& rng, double scale = 1.0) const;
    Vec random_direction(Rng& rng) const;
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr make_euclidean(int n);
ModelPtr make_heisenberg(int m);
ModelPtr make_model(const std::string& name, int dim);

// A Moebius automorphism stored as a closure over generators.
class Mobius {
public:
    using Fn = std::function<MPoint(const MPoint&)>;

    Mobius();
    explicit Mobius(Fn f);

    MPoint operator()(const MPoint& x) const { return f_(x); }
    // (*this) after inner.
    Mobius after(const Mobius& inner) const;

private:
    Fn f_;
};

inline Mobius operator*(const Mobius& outer, const Mobius& inner) { return outer.after(inner); }

Mobius left_translation(const ModelPtr& model, const Vec& g);
Mobius dilation(const ModelPtr& model, double lambda);
Mobius rotation(const ModelPtr& model, const Eigen::MatrixXd& U);
Mobius unit_inversion(const ModelPtr& model);

// Isometry from the metric with infinitely remote point omega (unit scale)
// onto the model metric; sends omega to infinity.
Mobius chart_at(const ModelPtr& model, const MPoint& omega);
Mobius chart_at_inverse(const ModelPtr& model, const MPoint& omega);

}  // namespace ptolemy
