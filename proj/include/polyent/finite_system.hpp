#pragma once

#include <cstddef>
#include <vector>

#include "polyent/system.hpp"

namespace polyent {

struct FinitePoint {
    std::size_t index = 0;
    friend bool operator==(const FinitePoint&, const FinitePoint&) = default;
};

/// A permutation of finitely many points with an explicit distance matrix.
class FiniteSystem {
public:
    using point_type = FinitePoint;

    /// `distances` must be a symmetric metric matrix, `next` a permutation.
    FiniteSystem(std::vector<std::vector<double>> distances, std::vector<std::size_t> next);

    /// A single fixed point.
    static FiniteSystem fixed_point();
    /// `count` fixed points at mutual distance `separation`.
    static FiniteSystem isolated_points(std::size_t count, double separation);
    /// One periodic orbit: the rotation by 1/period on the points j/period of the circle.
    static FiniteSystem periodic_orbit(std::size_t period);

    std::size_t size() const { return next_.size(); }

    double dist(FinitePoint x, FinitePoint y) const { return dist_[x.index][y.index]; }
    FinitePoint map(FinitePoint x) const { return {next_[x.index]}; }
    FinitePoint inverse(FinitePoint x) const { return {prev_[x.index]}; }

    /// Every point, in index order; the resolution is ignored.
    std::vector<FinitePoint> sample(const Resolution&) const;

private:
    std::vector<std::vector<double>> dist_;
    std::vector<std::size_t> next_;
    std::vector<std::size_t> prev_;
};

}  // namespace polyent
