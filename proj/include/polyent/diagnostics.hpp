#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "polyent/bowen_dist.hpp"
#include "polyent/symbolic.hpp"
#include "polyent/system.hpp"

namespace polyent {

/// Least n in [1, m_max] with dist(f^n x, x) < eps.
template <DynamicalSystem S>
std::optional<std::uint64_t> return_time(const S& sys, const point_of<S>& x, double eps,
                                         std::uint64_t m_max) {
    if (m_max == 0) throw std::invalid_argument("return_time: m_max must be >= 1");
    point_of<S> y = x;
    for (std::uint64_t n = 1; n <= m_max; ++n) {
        y = sys.map(y);
        if (sys.dist(y, x) < eps) return n;
    }
    return std::nullopt;
}

struct RecurrenceReport {
    double eps = 0.0;
    std::uint64_t m_bound = 0;
    /// Aligned with the sample; nullopt means no return within m_bound.
    std::vector<std::optional<std::uint64_t>> return_times;
    bool all_within = true;
    std::optional<std::size_t> first_failure;
};

template <DynamicalSystem S>
RecurrenceReport uniform_recurrence_check(const S& sys, std::span<const point_of<S>> sample, double eps,
                                          std::uint64_t m) {
    RecurrenceReport rep;
    rep.eps = eps;
    rep.m_bound = m;
    rep.return_times.resize(sample.size());
    const auto count = static_cast<std::int64_t>(sample.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) rep.return_times[i] = return_time(sys, sample[i], eps, m);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!rep.return_times[i]) {
            rep.all_within = false;
            rep.first_failure = i;
            break;
        }
    }
    return rep;
}

/// min over |n| <= window of dist(f^n x, f^n y). Only an upper bound for the
/// infimum over all n.
template <InvertibleSystem S>
double distality_gap(const S& sys, const point_of<S>& x, const point_of<S>& y, std::uint64_t window) {
    if (sys.dist(x, y) == 0.0) throw std::invalid_argument("distality_gap: points must differ");
    double gap = sys.dist(x, y);
    point_of<S> fx = x, fy = y, bx = x, by = y;
    for (std::uint64_t k = 1; k <= window; ++k) {
        fx = sys.map(fx);
        fy = sys.map(fy);
        bx = sys.inverse(bx);
        by = sys.inverse(by);
        gap = std::min({gap, static_cast<double>(sys.dist(fx, fy)), static_cast<double>(sys.dist(bx, by))});
    }
    return gap;
}

/// Number of distinct length-n factors inside the word's range.
std::uint64_t word_complexity(const SymbolicWord& word, std::size_t n);

/// word_complexity for n = 1..n_max (entry i holds p(i+1)).
std::vector<std::uint64_t> complexity_profile(const SymbolicWord& word, std::size_t n_max);

struct MorseHedlundVerdict {
    /// p(n) == p(n+1) for some n in the profile.
    bool eventually_periodic = false;
    /// p(n) >= n+1 for every n in the profile.
    bool above_diagonal = false;
    std::optional<std::size_t> plateau_at;
};

MorseHedlundVerdict morse_hedlund(std::span<const std::uint64_t> profile);

}  // namespace polyent
