#include "ptolemy/mpoint.hpp"

#include "ptolemy/errors.hpp"

#include <cmath>
#include <limits>

namespace ptolemy {

MPoint::MPoint(Vec coords) : inf_(false), c_(std::move(coords)) {
    for (Eigen::Index i = 0; i < c_.size(); ++i)
        if (!std::isfinite(c_[i]))
            throw DegenerateInput("non-finite coordinate in MPoint");
}

MPoint::MPoint(std::initializer_list<double> coords) : inf_(false), c_(coords.size()) {
    Eigen::Index i = 0;
    for (double v : coords) c_[i++] = v;
}

const Vec& MPoint::coords() const {
    if (inf_) throw DegenerateInput("coordinates requested for the point at infinity");
    return c_;
}

bool operator==(const MPoint& a, const MPoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.c_.size() == b.c_.size() && a.c_ == b.c_;
}

double chart_distance(const MPoint& a, const MPoint& b) {
    if (a.is_infinity() || b.is_infinity())
        return a.is_infinity() == b.is_infinity() ? 0.0
                                                  : std::numeric_limits<double>::infinity();
    return (a.coords() - b.coords()).norm();
}

std::ostream& operator<<(std::ostream& os, const MPoint& p) {
    if (p.is_infinity()) return os << "inf";
    os << '(';
    for (Eigen::Index i = 0; i < p.coords().size(); ++i)
        os << (i ? ", " : "") << p.coords()[i];
    return os << ')';
}

}  // namespace ptolemy
