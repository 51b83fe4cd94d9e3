#pragma once

#include <vector>

#include "polyent/circle.hpp"
#include "polyent/system.hpp"

namespace polyent {

/// x -> x + theta on R/Z.
class CircleRotation {
public:
    using point_type = CirclePoint;

    explicit CircleRotation(double theta) : theta_(wrap_unit(theta)) {}

    double angle() const { return theta_; }

    double dist(CirclePoint x, CirclePoint y) const { return circle_dist(x, y); }
    CirclePoint map(CirclePoint x) const { return CirclePoint(x.angle + theta_); }
    CirclePoint inverse(CirclePoint x) const { return CirclePoint(x.angle - theta_); }

    std::vector<CirclePoint> sample(const Resolution& res) const {
        std::vector<CirclePoint> out;
        out.reserve(res.points);
        for (std::size_t j = 0; j < res.points; ++j)
            out.emplace_back(static_cast<double>(j) / static_cast<double>(res.points));
        return out;
    }

private:
    double theta_;
};

}  // namespace polyent
