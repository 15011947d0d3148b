#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <ostream>

namespace ptolemy {

using Vec = Eigen::VectorXd;

// A point of a Moebius space: either finite coordinates or the point at infinity.
class MPoint {
public:
    MPoint() : inf_(true) {}
    explicit MPoint(Vec coords);
    MPoint(std::initializer_list<double> coords);

    static MPoint infinity() { return MPoint(); }

    bool is_infinity() const { return inf_; }
    bool is_finite() const { return !inf_; }
    const Vec& coords() const;
    Eigen::Index size() const { return inf_ ? 0 : c_.size(); }

    friend bool operator==(const MPoint& a, const MPoint& b);

private:
    bool inf_;
    Vec c_;
};

inline bool operator!=(const MPoint& a, const MPoint& b) { return !(a == b); }

// Chart (coordinate) distance; infinity is only close to itself.
double chart_distance(const MPoint& a, const MPoint& b);

std::ostream& operator<<(std::ostream& os, const MPoint& p);

}  // namespace ptolemy
