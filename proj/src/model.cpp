#include "ptolemy/model.hpp"

#include "ptolemy/errors.hpp"

#include <cmath>

namespace ptolemy {

namespace {

class EuclideanModel final : public Model {
public:
    explicit EuclideanModel(int n) : n_(n) {}

    std::string name() const override { return "euclidean"; }
    int dim() const override { return n_; }
    int coord_dim() const override { return n_; }
    int horizontal_dim() const override { return n_; }

    double dist(const Vec& x, const Vec& y) const override { return (x - y).norm(); }
    Vec mul(const Vec& a, const Vec& b) const override { return a + b; }
    Vec inv(const Vec& a) const override { return -a; }
    Vec dilate(double lambda, const Vec& x) const override { return lambda * x; }
    Vec unit_inversion(const Vec& x) const override { return -x / x.squaredNorm(); }

    Vec horizontal(const Vec& x) const override { return x; }
    Vec embed_horizontal(const Vec& h) const override { return h; }
    bool is_horizontal(const Vec& d, double tol) const override {
        return d.size() == n_ && std::abs(d.norm() - 1.0) <= tol;
    }

    Vec rotate(const Eigen::MatrixXd& U, const Vec& x) const override { return U * x; }
    Eigen::MatrixXd random_rotation(Rng& rng) const override {
        Eigen::MatrixXd A(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) A(i, j) = gaussian(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::MatrixXd Q = qr.householderQ();
        return Q;
    }

private:
    int n_;
};

// Coordinates (Re z1, Im z1, ..., Re zm, Im zm, t).
class HeisenbergModel final : public Model {
public:
    explicit HeisenbergModel(int m) : m_(m) {}

    std::string name() const override { return "heisenberg"; }
    int dim() const override { return m_; }
    int coord_dim() const override { return 2 * m_ + 1; }
    int horizontal_dim() const override { return 2 * m_; }

    // Im <z, w> with <z, w> = sum z_j conj(w_j).
    double im_herm(const Vec& a, const Vec& b) const {
        double s = 0.0;
        for (int j = 0; j < m_; ++j) s += a[2 * j + 1] * b[2 * j] - a[2 * j] * b[2 * j + 1];
        return s;
    }

    double dist(const Vec& x, const Vec& y) const override {
        Vec d = y - x;
        double dz2 = d.head(2 * m_).squaredNorm();
        // Im<x,x> = 0, so pairing with the difference avoids cancellation
        // for nearby points.
        double dt = d[2 * m_] + 2.0 * im_herm(x, d);
        return std::sqrt(std::hypot(dz2, dt));
    }

    Vec mul(const Vec& a, const Vec& b) const override {
        Vec r = a + b;
        r[2 * m_] -= 2.0 * im_herm(a, b);
        return r;
    }
    Vec inv(const Vec& a) const override { return -a; }
    Vec dilate(double lambda, const Vec& x) const override {
        Vec r = lambda * x;
        r[2 * m_] *= lambda;
        return r;
    }

    // (z, t) -> (-z / (|z|^2 + i t), -t / (|z|^4 + t^2)).
    Vec unit_inversion(const Vec& x) const override {
        double a = x.head(2 * m_).squaredNorm();
        double t = x[2 * m_];
        double w2 = a * a + t * t;
        Vec r(2 * m_ + 1);
        for (int j = 0; j < m_; ++j) {
            double re = x[2 * j], im = x[2 * j + 1];
            // -(re + i im)(a - i t) / w2
            r[2 * j] = -(re * a + im * t) / w2;
            r[2 * j + 1] = -(im * a - re * t) / w2;
        }
        r[2 * m_] = -t / w2;
        return r;
    }

    Vec horizontal(const Vec& x) const override { return x.head(2 * m_); }
    Vec embed_horizontal(const Vec& h) const override {
        Vec r = Vec::Zero(2 * m_ + 1);
        r.head(2 * m_) = h;
        return r;
    }
    bool is_horizontal(const Vec& d, double tol) const override {
        return d.size() == 2 * m_ + 1 && std::abs(d[2 * m_]) <= tol &&
               std::abs(d.head(2 * m_).norm() - 1.0) <= tol;
    }

    Vec rotate(const Eigen::MatrixXd& U, const Vec& x) const override {
        Vec r = x;
        r.head(2 * m_) = U * x.head(2 * m_);
        return r;
    }

    Eigen::MatrixXd random_rotation(Rng& rng) const override {
        Eigen::MatrixXcd A(m_, m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) A(i, j) = {gaussian(rng), gaussian(rng)};
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
        Eigen::MatrixXcd U = qr.householderQ();
        Eigen::MatrixXd R(2 * m_, 2 * m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) {
                double re = U(i, j).real(), im = U(i, j).imag();
                R(2 * i, 2 * j) = re;
                R(2 * i, 2 * j + 1) = -im;
                R(2 * i + 1, 2 * j) = im;
                R(2 * i + 1, 2 * j + 1) = re;
            }
        return R;
    }

private:
    int m_;
};

}  // namespace

Vec Model::random_point(Rng& rng, double scale) const {
    Vec v(coord_dim());
    for (int i = 0; i < coord_dim(); ++i) v[i] = scale * gaussian(rng);
    return v;
}

Vec Model::random_direction(Rng& rng) const {
    Vec h(horizontal_dim());
    do {
        for (int i = 0; i < horizontal_dim(); ++i) h[i] = gaussian(rng);
    } while (h.norm() < 1e-3);
    return embed_horizontal(h / h.norm());
}

ModelPtr make_euclidean(int n) {
    if (n < 1) throw ConfigError("euclidean dimension must be >= 1");
    return std::make_shared<EuclideanModel>(n);
}

ModelPtr make_heisenberg(int m) {
    if (m < 1) throw ConfigError("heisenberg complex dimension must be >= 1");
    return std::make_shared<HeisenbergModel>(m);
}

ModelPtr make_model(const std::string& name, int dim) {
    if (name == "euclidean") return make_euclidean(dim);
    if (name == "heisenberg") return make_heisenberg(dim);
    throw ConfigError("unknown model '" + name + "'");
}

Mobius::Mobius() : f_([](const MPoint& x) { return x; }) {}
Mobius::Mobius(Fn f) : f_(std::move(f)) {}

Mobius Mobius::after(const Mobius& inner) const {
    Fn outer = f_, in = inner.f_;
    return Mobius([outer, in](const MPoint& x) { return outer(in(x)); });
}

Mobius left_translation(const ModelPtr& model, const Vec& g) {
    return Mobius([model, g](const MPoint& x) {
        return x.is_infinity() ? x : MPoint(model->mul(g, x.coords()));
    });
}

Mobius dilation(const ModelPtr& model, double lambda) {
    return Mobius([model, lambda](const MPoint& x) {
        return x.is_infinity() ? x : MPoint(model->dilate(lambda, x.coords()));
    });
}

Mobius rotation(const ModelPtr& model, const Eigen::MatrixXd& U) {
    return Mobius([model, U](const MPoint& x) {
        return x.is_infinity() ? x : MPoint(model->rotate(U, x.coords()));
    });
}

Mobius unit_inversion(const ModelPtr& model) {
    return Mobius([model](const MPoint& x) {
        if (x.is_infinity()) return MPoint(model->identity());
        if (x.coords().isZero(0.0)) return MPoint::infinity();
        return MPoint(model->unit_inversion(x.coords()));
    });
}

Mobius chart_at(const ModelPtr& model, const MPoint& omega) {
    if (omega.is_infinity()) return Mobius();
    return unit_inversion(model) * left_translation(model, model->inv(omega.coords()));
}

Mobius chart_at_inverse(const ModelPtr& model, const MPoint& omega) {
    if (omega.is_infinity()) return Mobius();
    return left_translation(model, omega.coords()) * unit_inversion(model);
}

}  // namespace ptolemy
