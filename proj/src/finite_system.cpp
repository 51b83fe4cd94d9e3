#include "polyent/finite_system.hpp"

#include <stdexcept>

#include "polyent/circle.hpp"

namespace polyent {

FiniteSystem::FiniteSystem(std::vector<std::vector<double>> distances, std::vector<std::size_t> next)
    : dist_(std::move(distances)), next_(std::move(next)), prev_(next_.size()) {
    const std::size_t m = next_.size();
    if (m == 0 || dist_.size() != m) throw std::invalid_argument("finite system: size mismatch");
    std::vector<bool> hit(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (dist_[i].size() != m) throw std::invalid_argument("finite system: distance matrix not square");
        if (next_[i] >= m || hit[next_[i]]) throw std::invalid_argument("finite system: map is not a permutation");
        hit[next_[i]] = true;
        prev_[next_[i]] = i;
        for (std::size_t j = 0; j < m; ++j)
            if (dist_[i][j] != dist_[j][i] || dist_[i][j] < 0.0 || (i == j) != (dist_[i][j] == 0.0))
                throw std::invalid_argument("finite system: distances are not a metric");
    }
}

FiniteSystem FiniteSystem::fixed_point() { return FiniteSystem({{0.0}}, {0}); }

FiniteSystem FiniteSystem::isolated_points(std::size_t count, double separation) {
    std::vector<std::vector<double>> d(count, std::vector<double>(count, separation));
    std::vector<std::size_t> next(count);
    for (std::size_t i = 0; i < count; ++i) {
        d[i][i] = 0.0;
        next[i] = i;
    }
    return FiniteSystem(std::move(d), std::move(next));
}

FiniteSystem FiniteSystem::periodic_orbit(std::size_t period) {
    std::vector<std::vector<double>> d(period, std::vector<double>(period));
    std::vector<std::size_t> next(period);
    const auto p = static_cast<double>(period);
    for (std::size_t i = 0; i < period; ++i) {
        next[i] = (i + 1) % period;
        for (std::size_t j = 0; j < period; ++j)
            d[i][j] = i == j ? 0.0 : circle_dist(static_cast<double>(i) / p, static_cast<double>(j) / p);
    }
    return FiniteSystem(std::move(d), std::move(next));
}

std::vector<FinitePoint> FiniteSystem::sample(const Resolution&) const {
    std::vector<FinitePoint> out(next_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = i;
    return out;
}

}  // namespace polyent
