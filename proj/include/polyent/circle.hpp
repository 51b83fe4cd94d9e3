#pragma once

#include <algorithm>
#include <cmath>

namespace polyent {

/// Representative of x in [0,1).
inline double wrap_unit(double x) {
    double f = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    return f >= 1.0 ? 0.0 : f;
}

/// Distance from x to the nearest integer, i.e. the circle distance of x to 0.
inline double dist_to_integer(double x) {
    return std::fabs(x - std::nearbyint(x));
}

/// A point of the circle R/Z, stored by its representative in [0,1).
struct CirclePoint {
    CirclePoint() = default;
    CirclePoint(double a) : angle(wrap_unit(a)) {}  // NOLINT: implicit by intent

    double angle = 0.0;

    friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

inline double circle_dist(double x, double y) {
    double d = std::fabs(wrap_unit(x) - wrap_unit(y));
    return std::min(d, 1.0 - d);
}

inline double circle_dist(CirclePoint x, CirclePoint y) {
    return circle_dist(x.angle, y.angle);
}

}  // namespace polyent
