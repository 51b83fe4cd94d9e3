#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyent/sequence_family.hpp"
#include "polyent/symbolic.hpp"
#include "polyent/system.hpp"
#include "polyent/tower.hpp"

namespace polyent {

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Smallest n with N * a_n < eps. Closed-form candidate for the exponential
/// and power families, then corrected against direct evaluation of a_{H-1}
/// and a_H.
std::uint32_t threshold_H(std::uint64_t N, double eps, const SequenceFamily& fam);

/// (c N / eps)^{1/(c+1)}: levels strictly below it are separated by orbit drift.
double threshold_D(std::uint64_t N, double eps, double c);

/// floor(1/eps) + 1 circle points spaced 1/r < eps.
std::uint64_t grid_count(double eps);

/// (floor(1/eps)+1)(H+1), the size of the spanning set A(N, eps).
std::uint64_t spanning_cardinality(std::uint64_t N, double eps, const SequenceFamily& fam);

/// floor(1/eps) * (ceil(D) - 1), the size of the separated set S(N, eps).
/// Throws ConstructionError when no level lies below D.
std::uint64_t separated_cardinality(std::uint64_t N, double eps, double c);

enum class ConstructionKind { spanning_A, separated_S };

struct TowerConstruction {
    ConstructionKind kind = ConstructionKind::spanning_A;
    std::uint64_t N = 0;
    double eps = 0.0;
    SequenceFamily family = SequenceFamily::exponential();
    TowerPointSet points;
    std::uint64_t predicted_cardinality = 0;
    std::optional<std::uint32_t> H;
    std::optional<double> D;

    // Filled in by certify_*.
    bool verified = false;
    bool strict = false;
    std::size_t non_strict = 0;
    /// S only: every pair sharing an angle (separated purely by drift) is strict.
    bool drift_strict = false;
    std::uint32_t levels_dropped = 0;
    std::size_t checked_against = 0;
    std::string witness;
};

/// P x ({a_n : n <= H} u {0}) with P = {j/r : 0 <= j < r}, r = floor(1/eps)+1.
TowerConstruction build_A(std::uint64_t N, double eps, const SequenceFamily& fam);

/// Y x {a_n : n < D} with Y = {0, eps, 2 eps, ...} (floor(1/eps) points), a_n = n^{-c}.
TowerConstruction build_S(std::uint64_t N, double eps, double c);

inline constexpr std::uint32_t kLevelMargin = 5;

/// Checks A against the tower sample with `grid` angles per circle on levels
/// 1..H+margin plus the base, window N.
void certify_A(TowerConstruction& report, std::size_t grid, std::uint32_t margin = kLevelMargin);

/// Checks S is (N, eps)-separated. If the top level fails, drops it and
/// retries, recording how many levels were dropped.
void certify_S(TowerConstruction& report);

/// Start indices of n+1 length-n windows of `word` that are pairwise
/// distinct (first occurrences, left to right). The shifted points are then
/// (n, 1)-separated for the shift metric. Throws ConstructionError when the
/// word has at most n distinct factors of length n.
std::vector<std::int64_t> hedlund_separated(const SymbolicWord& word, std::size_t n);

/// {x, f^-1 x, ..., f^-m x}.
template <InvertibleSystem S>
std::vector<point_of<S>> backward_orbit_set(const S& sys, const point_of<S>& x, std::size_t m) {
    std::vector<point_of<S>> out;
    out.reserve(m + 1);
    out.push_back(x);
    for (std::size_t j = 0; j < m; ++j) out.push_back(sys.inverse(out.back()));
    return out;
}

}  // namespace polyent
