#pragma once

// (n, eps)-spanning and (n, eps)-separated counting over finite samples.
//
// Every parallel kernel here has a serial counterpart in polyent::reference
// with the same contract; the parallel versions must return identical
// results for any thread count.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyent/bowen_dist.hpp"
#include "polyent/system.hpp"

namespace polyent {

struct SeparationCheck {
    bool separated = true;
    /// Every pair at Bowen distance > eps (beyond tolerance).
    bool strict = true;
    std::size_t non_strict_pairs = 0;
    /// Lexicographically first pair (i < j) closer than eps.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    double witness_distance = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> first_non_strict;
};

struct SpanningCheck {
    bool spans = true;
    /// Every sample point covered at Bowen distance < eps (beyond tolerance).
    bool strict = true;
    std::size_t non_strict_points = 0;
    /// First sample index not covered by any set point.
    std::optional<std::size_t> uncovered;
    std::optional<std::size_t> first_non_strict;
};

template <class P>
std::vector<P> select_points(std::span<const P> sample, std::span<const std::size_t> idx) {
    std::vector<P> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(sample[i]);
    return out;
}

namespace detail {

inline constexpr std::uint64_t kNoPair = std::numeric_limits<std::uint64_t>::max();

template <DynamicalSystem S>
bool separated_from_all(const S& sys, std::span<const point_of<S>> sample, const point_of<S>& x,
                        std::span<const std::size_t> kept, std::size_t n, double eps) {
    const double stop = separation_stop(eps);
    // Newest first: a rejected candidate is usually close to a recent pick.
    for (auto it = kept.rbegin(); it != kept.rend(); ++it)
        if (!is_separated(polyent::bowen_dist(sys, x, sample[*it], n, stop), eps)) return false;
    return true;
}

enum class PairClass { strict, non_strict, failed };

template <DynamicalSystem S>
std::pair<PairClass, double> classify_pair(const S& sys, const point_of<S>& x, const point_of<S>& y,
                                           std::size_t n, double eps) {
    double d = polyent::bowen_dist(sys, x, y, n, within_stop(eps));
    if (is_strictly_separated(d, eps)) return {PairClass::strict, d};
    if (is_separated(d, eps)) return {PairClass::non_strict, d};
    return {PairClass::failed, d};
}

}  // namespace detail

namespace reference {

template <DynamicalSystem S>
std::vector<std::size_t> greedy_separated_indices(const S& sys, std::span<const point_of<S>> sample,
                                                  std::size_t n, double eps) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < sample.size(); ++i)
        if (detail::separated_from_all(sys, sample, sample[i], std::span<const std::size_t>(kept), n, eps))
            kept.push_back(i);
    return kept;
}

template <DynamicalSystem S>
SeparationCheck verify_separated(const S& sys, std::span<const point_of<S>> set, std::size_t n,
                                 double eps) {
    SeparationCheck out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            auto [cls, d] = detail::classify_pair(sys, set[i], set[j], n, eps);
            if (cls == detail::PairClass::failed) {
                if (out.separated) {
                    out.witness = {i, j};
                    out.witness_distance = d;
                }
                out.separated = false;
                out.strict = false;
            } else if (cls == detail::PairClass::non_strict) {
                if (out.strict && !out.first_non_strict) out.first_non_strict = {i, j};
                out.strict = false;
                ++out.non_strict_pairs;
            }
        }
    }
    return out;
}

template <DynamicalSystem S>
SpanningCheck verify_spanning(const S& sys, std::span<const point_of<S>> set,
                              std::span<const point_of<S>> sample, std::size_t n, double eps) {
    SpanningCheck out;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        bool covered = false, strict = false;
        for (const auto& p : set) {
            double d = polyent::bowen_dist(sys, sample[i], p, n, within_stop(eps));
            if (is_strictly_within(d, eps)) {
                covered = strict = true;
                break;
            }
            covered = covered || is_within(d, eps);
        }
        if (!covered) {
            if (out.spans) out.uncovered = i;
            out.spans = false;
            out.strict = false;
        } else if (!strict) {
            if (!out.first_non_strict) out.first_non_strict = i;
            out.strict = false;
            ++out.non_strict_points;
        }
    }
    return out;
}

}  // namespace reference

/// Greedy maximal (n, eps)-separated subset of the sample: scans in order and
/// keeps a point iff it is eps-separated from every point kept so far.
///
/// Per block of candidates, the expensive scan against the kept set runs in
/// parallel, but only for candidates that clash with none of their nearest
/// predecessors (those are almost always rejected, cheaply, by a point
/// admitted from the same block). Admission then runs serially in sample
/// order, computing any missing scan on demand, so the result equals the
/// serial scan.
template <DynamicalSystem S>
std::vector<std::size_t> greedy_separated_indices(const S& sys, std::span<const point_of<S>> sample,
                                                  std::size_t n, double eps) {
    if (n == 0) throw std::invalid_argument("greedy_separated: n must be >= 1");
    constexpr std::int64_t kBlock = 256;
    constexpr std::int64_t kLookBack = 8;
    const double stop = separation_stop(eps);
    std::vector<std::size_t> kept;
    std::vector<char> screened(kBlock), ok(kBlock);
    for (std::size_t start = 0; start < sample.size(); start += kBlock) {
        const std::size_t end = std::min(sample.size(), start + static_cast<std::size_t>(kBlock));
        const std::size_t snapshot = kept.size();
        const auto count = static_cast<std::int64_t>(end - start);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t b = 0; b < count; ++b) {
            bool clash = false;
            for (std::int64_t c = b - 1; c >= 0 && c >= b - kLookBack && !clash; --c)
                clash = !is_separated(polyent::bowen_dist(sys, sample[start + b], sample[start + c], n, stop), eps);
            screened[b] = !clash;
            if (!clash)
                ok[b] = detail::separated_from_all(sys, sample, sample[start + b],
                                                   std::span<const std::size_t>(kept.data(), snapshot), n, eps);
        }
        for (std::int64_t b = 0; b < count; ++b) {
            const std::size_t i = start + static_cast<std::size_t>(b);
            const std::span<const std::size_t> added(kept.data() + snapshot, kept.size() - snapshot);
            if (!detail::separated_from_all(sys, sample, sample[i], added, n, eps)) continue;
            const bool take = screened[b] ? ok[b]
                                          : detail::separated_from_all(sys, sample, sample[i],
                                                                       std::span<const std::size_t>(kept.data(), snapshot), n, eps);
            if (take) kept.push_back(i);
        }
    }
    return kept;
}

template <DynamicalSystem S>
std::vector<point_of<S>> greedy_separated(const S& sys, std::span<const point_of<S>> sample,
                                          std::size_t n, double eps) {
    auto idx = greedy_separated_indices(sys, sample, n, eps);
    return select_points(sample, std::span<const std::size_t>(idx));
}

/// True iff all distinct pairs are at Bowen distance >= eps; strictness and
/// the first offending pair are reported.
template <DynamicalSystem S>
SeparationCheck verify_separated(const S& sys, std::span<const point_of<S>> set, std::size_t n,
                                 double eps) {
    if (n == 0) throw std::invalid_argument("verify_separated: n must be >= 1");
    const std::uint64_t m = set.size();
    std::uint64_t first_fail = detail::kNoPair, first_weak = detail::kNoPair;
    std::uint64_t weak_count = 0;
    const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 1) reduction(min : first_fail, first_weak) reduction(+ : weak_count)
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::uint64_t j = i + 1; j < m; ++j) {
            auto cls = detail::classify_pair(sys, set[i], set[j], n, eps).first;
            const std::uint64_t key = static_cast<std::uint64_t>(i) * m + j;
            if (cls == detail::PairClass::failed)
                first_fail = std::min(first_fail, key);
            else if (cls == detail::PairClass::non_strict) {
                first_weak = std::min(first_weak, key);
                ++weak_count;
            }
        }
    }
    SeparationCheck out;
    out.non_strict_pairs = weak_count;
    if (first_fail != detail::kNoPair) {
        out.separated = out.strict = false;
        out.witness = {first_fail / m, first_fail % m};
        out.witness_distance = polyent::bowen_dist(sys, set[first_fail / m], set[first_fail % m], n);
    }
    if (first_weak != detail::kNoPair) {
        out.strict = false;
        if (out.separated) out.first_non_strict = {first_weak / m, first_weak % m};
    }
    return out;
}

/// True iff every sample point is within eps (Bowen) of some set point.
template <DynamicalSystem S>
SpanningCheck verify_spanning(const S& sys, std::span<const point_of<S>> set,
                              std::span<const point_of<S>> sample, std::size_t n, double eps) {
    if (n == 0) throw std::invalid_argument("verify_spanning: n must be >= 1");
    std::uint64_t first_uncovered = detail::kNoPair, first_weak = detail::kNoPair;
    std::uint64_t weak_count = 0;
    const double stop = within_stop(eps);
    const auto count = static_cast<std::int64_t>(sample.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first_uncovered, first_weak) reduction(+ : weak_count)
    for (std::int64_t i = 0; i < count; ++i) {
        bool covered = false, strict = false;
        for (const auto& p : set) {
            double d = polyent::bowen_dist(sys, sample[i], p, n, stop);
            if (is_strictly_within(d, eps)) {
                covered = strict = true;
                break;
            }
            covered = covered || is_within(d, eps);
        }
        if (!covered)
            first_uncovered = std::min<std::uint64_t>(first_uncovered, i);
        else if (!strict) {
            first_weak = std::min<std::uint64_t>(first_weak, i);
            ++weak_count;
        }
    }
    SpanningCheck out;
    if (first_uncovered != detail::kNoPair) {
        out.spans = out.strict = false;
        out.uncovered = first_uncovered;
    }
    if (weak_count > 0) {
        out.strict = false;
        out.non_strict_points = weak_count;
        if (out.spans) out.first_non_strict = first_weak;
    }
    return out;
}

inline constexpr std::size_t kMaxSpanningSample = std::size_t{1} << 15;

/// Greedy set cover of the sample by Bowen eps-balls centred at sample
/// points: each round takes the point covering most still-uncovered points,
/// earliest index on ties. Returns indices in pick order.
template <DynamicalSystem S>
std::vector<std::size_t> greedy_spanning_indices(const S& sys, std::span<const point_of<S>> sample,
                                                 std::size_t n, double eps) {
    if (n == 0) throw std::invalid_argument("greedy_spanning: n must be >= 1");
    const std::size_t m = sample.size();
    if (m > kMaxSpanningSample)
        throw std::length_error("greedy_spanning: sample larger than kMaxSpanningSample");
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> balls(m * words, 0);
    const double stop = within_stop(eps);
    const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < rows; ++i) {
        std::uint64_t* row = balls.data() + i * words;
        for (std::size_t j = 0; j < m; ++j)
            if (static_cast<std::size_t>(i) == j || is_within(polyent::bowen_dist(sys, sample[i], sample[j], n, stop), eps))
                row[j / 64] |= std::uint64_t{1} << (j % 64);
    }

    std::vector<std::uint64_t> uncovered(words, ~std::uint64_t{0});
    if (m % 64 != 0) uncovered.back() = (std::uint64_t{1} << (m % 64)) - 1;
    std::size_t remaining = m;
    std::vector<std::size_t> gains(m);
    std::vector<std::size_t> picked;
    while (remaining > 0) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < rows; ++i) {
            const std::uint64_t* row = balls.data() + i * words;
            std::size_t g = 0;
            for (std::size_t w = 0; w < words; ++w) g += std::popcount(row[w] & uncovered[w]);
            gains[i] = g;
        }
        const auto best = static_cast<std::size_t>(std::max_element(gains.begin(), gains.end()) - gains.begin());
        picked.push_back(best);
        const std::uint64_t* row = balls.data() + best * words;
        for (std::size_t w = 0; w < words; ++w) uncovered[w] &= ~row[w];
        remaining -= gains[best];
    }
    return picked;
}

template <DynamicalSystem S>
std::vector<point_of<S>> greedy_spanning(const S& sys, std::span<const point_of<S>> sample,
                                         std::size_t n, double eps) {
    auto idx = greedy_spanning_indices(sys, sample, n, eps);
    return select_points(sample, std::span<const std::size_t>(idx));
}

inline constexpr std::size_t kMaxExactSample = 20;

/// Largest (n, eps)-separated subset of a sample of at most kMaxExactSample
/// points, by exhaustive branch and bound. Oracle for the greedy counters.
template <DynamicalSystem S>
std::vector<std::size_t> max_separated_exact(const S& sys, std::span<const point_of<S>> sample,
                                             std::size_t n, double eps) {
    const std::size_t m = sample.size();
    if (m > kMaxExactSample) throw std::length_error("max_separated_exact: sample too large");
    std::vector<std::uint32_t> conflict(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!is_separated(polyent::bowen_dist(sys, sample[i], sample[j], n), eps)) {
                conflict[i] |= 1u << j;
                conflict[j] |= 1u << i;
            }
    std::uint32_t best = 0;
    auto search = [&](auto&& self, std::uint32_t chosen, std::uint32_t open) -> void {
        if (std::popcount(chosen) + std::popcount(open) <= std::popcount(best)) return;
        if (open == 0) {
            best = chosen;
            return;
        }
        const int v = std::countr_zero(open);
        const std::uint32_t bit = 1u << v;
        self(self, chosen | bit, open & ~bit & ~conflict[v]);
        self(self, chosen, open & ~bit);
    };
    search(search, 0u, (1u << m) - 1);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i)
        if (best & (1u << i)) out.push_back(i);
    return out;
}

}  // namespace polyent
