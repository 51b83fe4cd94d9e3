#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace polyent {

/// Absolute tolerance used by every distance comparison against an eps
/// threshold. All eps values of interest are >= 1e-3.
inline constexpr double kDistanceTolerance = 1e-9;

inline constexpr std::uint64_t kDefaultSeed = 20150603;

/// Sampler resolution. Interpretation is per system:
///   towers and rotations: `points` angles per circle, `levels` finite levels (plus base);
///   orbit-sampled subshifts: `points` consecutive shifts of the generating point;
///   full shifts: `points` is the word length of the periodic points enumerated.
struct Resolution {
    std::size_t points = 100;
    std::uint32_t levels = 0;
    std::uint64_t seed = kDefaultSeed;
};

template <class S>
concept DynamicalSystem = requires(const S& s, const typename S::point_type& p) {
    { s.dist(p, p) } -> std::convertible_to<double>;
    { s.map(p) } -> std::convertible_to<typename S::point_type>;
};

template <class S>
concept InvertibleSystem = DynamicalSystem<S> && requires(const S& s, const typename S::point_type& p) {
    { s.inverse(p) } -> std::convertible_to<typename S::point_type>;
};

template <class S>
concept SampledSystem = DynamicalSystem<S> && requires(const S& s, const Resolution& r) {
    { s.sample(r) } -> std::convertible_to<std::vector<typename S::point_type>>;
};

/// Systems that know a faster exact route to the Bowen distance than
/// stepping the map. The result must agree with reference::bowen_dist.
template <class S>
concept HasBowenKernel = DynamicalSystem<S> &&
    requires(const S& s, const typename S::point_type& p, std::size_t n, double stop) {
        { s.bowen_dist(p, p, n, stop) } -> std::convertible_to<double>;
    };

template <DynamicalSystem S>
using point_of = typename S::point_type;

}  // namespace polyent
