#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "polyent/circle.hpp"
#include "polyent/sequence_family.hpp"
#include "polyent/system.hpp"

namespace polyent {

/// Level of the tower: index n >= 1 is the circle at height a_n, index 0
/// is the base circle at height 0.
struct Level {
    std::uint32_t index = 0;

    static constexpr Level base() { return Level{0}; }
    static constexpr Level finite(std::uint32_t n) { return Level{n}; }
    constexpr bool is_base() const { return index == 0; }

    auto operator<=>(const Level&) const = default;
};

struct TowerPoint {
    TowerPoint() = default;
    TowerPoint(double a, Level l) : angle(wrap_unit(a)), level(l) {}

    double angle = 0.0;
    Level level;

    friend bool operator==(const TowerPoint&, const TowerPoint&) = default;
};

/// The countable union of circles S^1 x ({a_n} u {0}) with the max metric,
/// and the map rotating level n by a_n while fixing the base circle.
class CircleTower {
public:
    using point_type = TowerPoint;

    explicit CircleTower(SequenceFamily family);

    const SequenceFamily& family() const { return family_; }

    /// a_n for finite levels, 0 for the base.
    double height(Level level) const;

    double dist(const TowerPoint& p, const TowerPoint& q) const;
    TowerPoint map(const TowerPoint& p) const;
    TowerPoint inverse(const TowerPoint& p) const;

    /// f^k(p) as angle + k * height reduced once; k may be negative.
    TowerPoint iterate(const TowerPoint& p, std::int64_t k) const;

    /// Exact max over 0 <= k < n of dist(f^k p, f^k q) without stepping the map.
    /// Returns early with a value >= stop once one is found.
    double bowen_dist(const TowerPoint& p, const TowerPoint& q, std::size_t n, double stop) const;

    /// Angle grid j/points on levels 1..levels, then the base circle.
    std::vector<TowerPoint> sample(const Resolution& res) const;

private:
    SequenceFamily family_;
    std::shared_ptr<const std::vector<double>> heights_;  // cached a_1.. for small levels
};

// Single-shot forms that skip building a CircleTower.
double tower_dist(const TowerPoint& p, const TowerPoint& q, const SequenceFamily& fam);
TowerPoint tower_map(const TowerPoint& p, const SequenceFamily& fam);
TowerPoint tower_iterate(const TowerPoint& p, std::int64_t k, const SequenceFamily& fam);

/// Cartesian product of an angle list with levels 1..max_level (and
/// optionally the base), enumerated level-major. Random access, never
/// materialized unless asked, so huge constructions can still be counted.
class TowerPointSet {
public:
    TowerPointSet() = default;
    TowerPointSet(std::vector<double> angles, std::uint32_t max_level, bool include_base);

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    TowerPoint operator[](std::size_t i) const;

    const std::vector<double>& angles() const { return angles_; }
    std::uint32_t max_level() const { return max_level_; }
    bool includes_base() const { return include_base_; }
    std::size_t level_count() const { return max_level_ + (include_base_ ? 1u : 0u); }

    /// Throws std::length_error above `limit` points.
    std::vector<TowerPoint> materialize(std::size_t limit = std::size_t{1} << 26) const;

    /// Drops the top finite level.
    void drop_top_level();

private:
    std::vector<double> angles_;
    std::uint32_t max_level_ = 0;
    bool include_base_ = false;
};

}  // namespace polyent
