#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "polyent/system.hpp"

namespace polyent {

inline constexpr double kNoStop = std::numeric_limits<double>::infinity();

// Threshold predicates shared by the greedy counters and the verifiers.
inline bool is_separated(double d, double eps) { return d >= eps - kDistanceTolerance; }
inline bool is_strictly_separated(double d, double eps) { return d > eps + kDistanceTolerance; }
inline bool is_within(double d, double eps) { return d <= eps + kDistanceTolerance; }
inline bool is_strictly_within(double d, double eps) { return d < eps - kDistanceTolerance; }

/// Early-exit threshold for "is d >= eps (up to tolerance)".
inline double separation_stop(double eps) { return eps - kDistanceTolerance; }
/// Early-exit threshold for "is d <= eps (up to tolerance)": stop as soon as it is not.
inline double within_stop(double eps) { return std::nextafter(eps + kDistanceTolerance, kNoStop); }

namespace reference {

/// max_{0 <= k < n} dist(f^k x, f^k y) by stepping the map. Returns as soon
/// as the running max reaches `stop`.
template <DynamicalSystem S>
double bowen_dist(const S& sys, const point_of<S>& x, const point_of<S>& y, std::size_t n,
                  double stop = kNoStop) {
    if (n == 0) throw std::invalid_argument("bowen_dist: n must be >= 1");
    point_of<S> a = x;
    point_of<S> b = y;
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        best = std::max(best, static_cast<double>(sys.dist(a, b)));
        if (best >= stop) return best;
        if (k + 1 < n) {
            a = sys.map(a);
            b = sys.map(b);
        }
    }
    return best;
}

}  // namespace reference

/// Bowen distance d_n(x, y). Dispatches to a system's own kernel when it
/// has one; see reference::bowen_dist for the contract.
template <DynamicalSystem S>
double bowen_dist(const S& sys, const point_of<S>& x, const point_of<S>& y, std::size_t n,
                  double stop = kNoStop) {
    if constexpr (HasBowenKernel<S>) {
        if (n == 0) throw std::invalid_argument("bowen_dist: n must be >= 1");
        return sys.bowen_dist(x, y, n, stop);
    } else {
        return reference::bowen_dist(sys, x, y, n, stop);
    }
}

}  // namespace polyent
