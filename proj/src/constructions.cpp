#include "polyent/constructions.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string_view>
#include <unordered_set>

#include "polyent/bowen.hpp"
#include "polyent/format.hpp"

namespace polyent {

namespace {

void require_positive_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
}

std::string describe_point(const TowerPoint& p) {
    return "(" + format_real(p.angle) + ", " + (p.level.is_base() ? std::string("base") : std::to_string(p.level.index)) + ")";
}

}  // namespace

std::uint32_t threshold_H(std::uint64_t N, double eps, const SequenceFamily& fam) {
    require_positive_eps(eps);
    if (N == 0) throw std::invalid_argument("threshold_H: N must be >= 1");
    const double scale = static_cast<double>(N);
    auto below = [&](std::uint32_t n) { return scale * fam.term(n) < eps; };

    double guess = 1.0;
    switch (fam.kind()) {
        case SequenceFamily::Kind::exponential: guess = std::ceil(std::log(scale / eps)); break;
        case SequenceFamily::Kind::power: guess = std::ceil(std::pow(scale / eps, 1.0 / fam.exponent())); break;
        case SequenceFamily::Kind::custom: guess = 1.0; break;
    }
    if (!(guess >= 1.0)) guess = 1.0;
    if (guess > static_cast<double>(std::numeric_limits<std::uint32_t>::max() - 1))
        throw std::overflow_error("threshold_H exceeds the level range");

    auto h = static_cast<std::uint32_t>(guess);
    while (h > 1 && below(h - 1)) --h;
    while (true) {
        if (!fam.has_term(h)) throw ConstructionError("sequence too short");
        if (below(h)) return h;
        ++h;
    }
}

double threshold_D(std::uint64_t N, double eps, double c) {
    require_positive_eps(eps);
    if (!(c >= 1.0)) throw std::invalid_argument("threshold_D: c must be >= 1");
    return std::pow(c * static_cast<double>(N) / eps, 1.0 / (c + 1.0));
}

std::uint64_t grid_count(double eps) {
    require_positive_eps(eps);
    return static_cast<std::uint64_t>(std::floor(1.0 / eps)) + 1;
}

std::uint64_t spanning_cardinality(std::uint64_t N, double eps, const SequenceFamily& fam) {
    return grid_count(eps) * (static_cast<std::uint64_t>(threshold_H(N, eps, fam)) + 1);
}

namespace {

std::uint32_t levels_below(double D) {
    const double top = std::ceil(D) - 1.0;
    return top < 1.0 ? 0u : static_cast<std::uint32_t>(top);
}

}  // namespace

std::uint64_t separated_cardinality(std::uint64_t N, double eps, double c) {
    const std::uint32_t levels = levels_below(threshold_D(N, eps, c));
    if (levels == 0) throw ConstructionError("N too small for eps, c");
    return (grid_count(eps) - 1) * levels;
}

TowerConstruction build_A(std::uint64_t N, double eps, const SequenceFamily& fam) {
    require_positive_eps(eps);
    TowerConstruction rep;
    rep.kind = ConstructionKind::spanning_A;
    rep.N = N;
    rep.eps = eps;
    rep.family = fam;
    rep.H = threshold_H(N, eps, fam);
    const std::uint64_t r = grid_count(eps);
    std::vector<double> grid(r);
    for (std::uint64_t j = 0; j < r; ++j) grid[j] = static_cast<double>(j) / static_cast<double>(r);
    rep.points = TowerPointSet(std::move(grid), *rep.H, true);
    rep.predicted_cardinality = r * (static_cast<std::uint64_t>(*rep.H) + 1);
    return rep;
}

TowerConstruction build_S(std::uint64_t N, double eps, double c) {
    require_positive_eps(eps);
    TowerConstruction rep;
    rep.kind = ConstructionKind::separated_S;
    rep.N = N;
    rep.eps = eps;
    rep.family = SequenceFamily::power(c);
    rep.D = threshold_D(N, eps, c);
    const std::uint32_t levels = levels_below(*rep.D);
    if (levels == 0) throw ConstructionError("N too small for eps, c");
    const std::uint64_t count = grid_count(eps) - 1;
    std::vector<double> ys(count);
    for (std::uint64_t j = 0; j < count; ++j) ys[j] = static_cast<double>(j) * eps;
    rep.points = TowerPointSet(std::move(ys), levels, false);
    rep.predicted_cardinality = count * levels;
    return rep;
}

void certify_A(TowerConstruction& rep, std::size_t grid, std::uint32_t margin) {
    if (rep.kind != ConstructionKind::spanning_A) throw std::logic_error("certify_A on a non-A construction");
    const CircleTower tower(rep.family);
    const auto sample = tower.sample({grid, *rep.H + margin, kDefaultSeed});
    const auto set = rep.points.materialize();
    const auto check = verify_spanning(tower, std::span<const TowerPoint>(set), std::span<const TowerPoint>(sample),
                                       rep.N, rep.eps);
    rep.verified = check.spans;
    rep.strict = check.strict;
    rep.non_strict = check.non_strict_points;
    rep.checked_against = sample.size();
    rep.witness = check.uncovered ? "uncovered sample point " + describe_point(sample[*check.uncovered]) : "";
}

void certify_S(TowerConstruction& rep) {
    if (rep.kind != ConstructionKind::separated_S) throw std::logic_error("certify_S on a non-S construction");
    const CircleTower tower(rep.family);
    while (true) {
        const auto set = rep.points.materialize();
        const std::span<const TowerPoint> view(set);
        const auto check = verify_separated(tower, view, rep.N, rep.eps);
        rep.checked_against = set.size();
        if (!check.separated) {
            const auto [i, j] = *check.witness;
            rep.witness = "pair " + describe_point(set[i]) + " " + describe_point(set[j]) + " at distance " +
                          format_real(check.witness_distance);
            const std::uint32_t top = rep.points.max_level();
            if (top > 1 && (set[i].level.index == top || set[j].level.index == top)) {
                rep.points.drop_top_level();
                ++rep.levels_dropped;
                continue;
            }
            rep.verified = rep.strict = rep.drift_strict = false;
            return;
        }
        // Points sharing an angle differ only by level; only drift separates
        // them, and the proof makes those pairs strict. A weak drift pair on
        // the top level is the window off-by-one: drop the level and retry.
        bool drift_strict = true;
        bool retry = false;
        for (double y : rep.points.angles()) {
            const TowerPointSet column({y}, rep.points.max_level(), false);
            const auto pts = column.materialize();
            const auto col = verify_separated(tower, std::span<const TowerPoint>(pts), rep.N, rep.eps);
            if (col.separated && col.strict) continue;
            drift_strict = false;
            const auto [i, j] = col.separated ? *col.first_non_strict : *col.witness;
            const std::uint32_t top = rep.points.max_level();
            if (top > 1 && (pts[i].level.index == top || pts[j].level.index == top)) {
                retry = true;
                break;
            }
        }
        if (retry) {
            rep.points.drop_top_level();
            ++rep.levels_dropped;
            continue;
        }
        rep.verified = true;
        rep.strict = check.strict;
        rep.non_strict = check.non_strict_pairs;
        rep.drift_strict = drift_strict;
        rep.witness.clear();
        return;
    }
}

std::vector<std::int64_t> hedlund_separated(const SymbolicWord& word, std::size_t n) {
    if (n == 0) throw std::invalid_argument("hedlund_separated: n must be >= 1");
    std::vector<std::int64_t> starts;
    if (word.size() < n) throw ConstructionError("word periodic or range too short");
    std::unordered_set<std::string_view> seen;
    const auto last_start = word.last() - static_cast<std::int64_t>(n) + 1;
    for (std::int64_t k = word.first(); k <= last_start && starts.size() < n + 1; ++k)
        if (seen.insert(word.factor(k, n)).second) starts.push_back(k);
    if (starts.size() < n + 1) throw ConstructionError("word periodic or range too short");
    return starts;
}

}  // namespace polyent
