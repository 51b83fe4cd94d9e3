#include "polyent/tower.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyent {

namespace {

constexpr std::uint32_t kHeightCache = 4096;

double family_height(const SequenceFamily& fam, Level level) {
    return level.is_base() ? 0.0 : fam.term(level.index);
}

}  // namespace

double tower_dist(const TowerPoint& p, const TowerPoint& q, const SequenceFamily& fam) {
    return std::max(circle_dist(p.angle, q.angle),
                    std::fabs(family_height(fam, p.level) - family_height(fam, q.level)));
}

TowerPoint tower_map(const TowerPoint& p, const SequenceFamily& fam) {
    return {p.angle + wrap_unit(family_height(fam, p.level)), p.level};
}

TowerPoint tower_iterate(const TowerPoint& p, std::int64_t k, const SequenceFamily& fam) {
    return {p.angle + std::fmod(static_cast<double>(k) * family_height(fam, p.level), 1.0), p.level};
}

CircleTower::CircleTower(SequenceFamily family) : family_(std::move(family)) {
    std::uint32_t cached = kHeightCache;
    if (auto len = family_.length()) cached = std::min(cached, *len);
    auto table = std::make_shared<std::vector<double>>(cached + 1, 0.0);
    for (std::uint32_t n = 1; n <= cached; ++n) (*table)[n] = family_.term(n);
    heights_ = std::move(table);
}

double CircleTower::height(Level level) const {
    if (level.index < heights_->size()) return (*heights_)[level.index];
    return family_height(family_, level);
}

double CircleTower::dist(const TowerPoint& p, const TowerPoint& q) const {
    return std::max(circle_dist(p.angle, q.angle), std::fabs(height(p.level) - height(q.level)));
}

TowerPoint CircleTower::map(const TowerPoint& p) const {
    // Reduce the rotation first so a full turn (a_1 = 1) is exactly the identity.
    return {p.angle + wrap_unit(height(p.level)), p.level};
}

TowerPoint CircleTower::inverse(const TowerPoint& p) const {
    return {p.angle - wrap_unit(height(p.level)), p.level};
}

TowerPoint CircleTower::iterate(const TowerPoint& p, std::int64_t k) const {
    return {p.angle + std::fmod(static_cast<double>(k) * height(p.level), 1.0), p.level};
}

double CircleTower::bowen_dist(const TowerPoint& p, const TowerPoint& q, std::size_t n, double stop) const {
    // dist(f^k p, f^k q) = max(|dist to Z of d + k delta|, |delta|).
    const double delta = height(p.level) - height(q.level);
    double best = std::fabs(delta);
    if (best >= stop) return best;
    const double d = p.angle - q.angle;
    auto term = [&](double k) { return dist_to_integer(d + k * delta); };
    best = std::max(best, term(0.0));
    if (best >= stop || n == 1 || delta == 0.0) return best;

    const double last = static_cast<double>(n - 1);
    best = std::max(best, term(last));
    if (best >= stop) return best;

    // Between endpoints the maximum sits beside a crossing of a half-integer.
    const double lo = std::min(d, d + last * delta);
    const double hi = std::max(d, d + last * delta);
    const double j_lo = std::ceil(lo - 0.5);
    const double j_hi = std::floor(hi - 0.5);
    if (j_hi < j_lo) return best;
    if (j_hi - j_lo + 1.0 >= last) {
        for (std::size_t k = 1; k + 1 < n; ++k) {
            best = std::max(best, term(static_cast<double>(k)));
            if (best >= stop) return best;
        }
        return best;
    }
    const double crossings = j_hi - j_lo;
    for (double t = 0.0; t <= crossings; t += 1.0) {
        const double j = delta > 0.0 ? j_lo + t : j_hi - t;
        const double k0 = std::floor((j + 0.5 - d) / delta);
        for (double k = k0 - 1.0; k <= k0 + 2.0; k += 1.0)
            if (k >= 0.0 && k <= last) best = std::max(best, term(k));
        if (best >= stop) return best;
    }
    return best;
}

std::vector<TowerPoint> CircleTower::sample(const Resolution& res) const {
    if (res.points == 0) throw std::invalid_argument("tower sample needs at least one angle");
    std::vector<double> angles(res.points);
    for (std::size_t j = 0; j < res.points; ++j)
        angles[j] = static_cast<double>(j) / static_cast<double>(res.points);
    return TowerPointSet(std::move(angles), res.levels, true).materialize();
}

TowerPointSet::TowerPointSet(std::vector<double> angles, std::uint32_t max_level, bool include_base)
    : angles_(std::move(angles)), max_level_(max_level), include_base_(include_base) {
    for (double& a : angles_) a = wrap_unit(a);
}

std::size_t TowerPointSet::size() const { return angles_.size() * level_count(); }

TowerPoint TowerPointSet::operator[](std::size_t i) const {
    const std::size_t na = angles_.size();
    const std::size_t li = i / na;
    const Level level = li < max_level_ ? Level::finite(static_cast<std::uint32_t>(li + 1)) : Level::base();
    return {angles_[i % na], level};
}

std::vector<TowerPoint> TowerPointSet::materialize(std::size_t limit) const {
    const std::size_t m = size();
    if (m > limit) throw std::length_error("point set too large to materialize");
    std::vector<TowerPoint> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back((*this)[i]);
    return out;
}

void TowerPointSet::drop_top_level() {
    if (max_level_ > 0) --max_level_;
}

}  // namespace polyent
