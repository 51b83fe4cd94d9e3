#include "polyent/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyent/diagnostics.hpp"

namespace polyent {

std::string_view to_string(CountMethod m) {
    switch (m) {
        case CountMethod::greedy_separated: return "greedy-separated";
        case CountMethod::greedy_spanning: return "greedy-spanning";
        case CountMethod::construction_A: return "construction-A";
        case CountMethod::construction_S: return "construction-S";
        case CountMethod::symbolic_exact: return "symbolic-exact";
    }
    return "";
}

std::string_view to_string(BoundKind b) {
    switch (b) {
        case BoundKind::lower_bound_s: return "lower-bound-on-s_n";
        case BoundKind::upper_bound_r: return "upper-bound-on-r_n";
        case BoundKind::exact: return "exact";
    }
    return "";
}

std::string_view to_string(EntropyMode m) {
    return m == EntropyMode::polynomial ? "polynomial" : "topological";
}

CountMethod parse_count_method(std::string_view s) {
    for (auto m : {CountMethod::greedy_separated, CountMethod::greedy_spanning, CountMethod::construction_A,
                   CountMethod::construction_S, CountMethod::symbolic_exact})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown count method: " + std::string(s));
}

BoundKind bound_of(CountMethod m) {
    switch (m) {
        case CountMethod::greedy_separated:
        case CountMethod::construction_S: return BoundKind::lower_bound_s;
        case CountMethod::greedy_spanning:
        case CountMethod::construction_A: return BoundKind::upper_bound_r;
        case CountMethod::symbolic_exact: return BoundKind::exact;
    }
    return BoundKind::exact;
}

Resolution resolve(const CircleTower& tower, const SamplerSpec& spec, std::uint64_t n, double eps,
                   CountMethod method) {
    Resolution res{spec.grid, spec.fixed_levels, spec.seed};
    LevelCapPolicy policy = spec.policy;
    if (policy == LevelCapPolicy::automatic)
        policy = method == CountMethod::greedy_spanning ? LevelCapPolicy::spanning_threshold
                                                        : LevelCapPolicy::separated_threshold;
    const auto& fam = tower.family();
    if (policy == LevelCapPolicy::separated_threshold && fam.kind() == SequenceFamily::Kind::power)
        res.levels = static_cast<std::uint32_t>(std::ceil(threshold_D(n, eps, fam.exponent()))) + spec.level_margin;
    else if (policy != LevelCapPolicy::fixed)
        res.levels = threshold_H(n, eps, fam) + spec.level_margin;
    if (auto len = fam.length()) res.levels = std::min(res.levels, *len);
    return res;
}

int cylinder_radius(double eps, std::size_t metric_window) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!is_separated(1.0, eps)) return -1;
    int j = 0;
    while (static_cast<std::size_t>(j) < metric_window && is_separated(std::ldexp(1.0, -(j + 1)), eps)) ++j;
    return j;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw std::overflow_error("count overflows 64 bits");
    return a * b;
}

std::uint64_t symbolic_exact_count(const Subshift& shift, std::uint64_t n, double eps) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    const int j = cylinder_radius(eps, shift.metric_window());
    if (j < 0) return 1;
    const std::uint64_t len = n + 2 * static_cast<std::uint64_t>(j);
    if (shift.kind() == Subshift::Kind::full) {
        std::uint64_t count = 1;
        for (std::uint64_t i = 0; i < len; ++i) count = checked_mul(count, shift.alphabet());
        return count;
    }
    const auto word = shift.language_word(static_cast<std::size_t>(std::max(10 * len, len + 64)));
    return word_complexity(word, static_cast<std::size_t>(len));
}

std::uint64_t analytic_count(const CircleTower& tower, CountMethod method, std::uint64_t n, double eps) {
    switch (method) {
        case CountMethod::construction_A: return spanning_cardinality(n, eps, tower.family());
        case CountMethod::construction_S:
            if (tower.family().kind() != SequenceFamily::Kind::power)
                throw std::invalid_argument("construction-S needs the power family");
            return separated_cardinality(n, eps, tower.family().exponent());
        default:
            throw std::invalid_argument(std::string("method ") + std::string(to_string(method)) +
                                        " has no closed form on towers");
    }
}

std::uint64_t analytic_count(const Subshift& shift, CountMethod method, std::uint64_t n, double eps) {
    switch (method) {
        case CountMethod::symbolic_exact:
        case CountMethod::construction_A:
        case CountMethod::construction_S: return symbolic_exact_count(shift, n, eps);
        default:
            throw std::invalid_argument(std::string("method ") + std::string(to_string(method)) +
                                        " has no closed form on subshifts");
    }
}

void validate_grids(std::span<const std::uint64_t> ns, std::span<const double> epss) {
    if (ns.empty() || epss.empty()) throw std::invalid_argument("n and eps grids must be nonempty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] == 0) throw std::invalid_argument("n values must be >= 1");
        if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
    }
    for (std::size_t i = 0; i < epss.size(); ++i) {
        if (!(epss[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
        if (i > 0 && epss[i] >= epss[i - 1]) throw std::invalid_argument("eps grid must be strictly decreasing");
    }
}

namespace {

SlopeFit fit_tail(std::span<const CountRecord> records, double eps, double tail_fraction, bool log_n) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw std::invalid_argument("tail_fraction must lie in (0, 1]");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
    for (const auto& r : records)
        if (r.eps == eps) pts.emplace_back(r.n, r.count);
    std::sort(pts.begin(), pts.end());
    const auto k = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(pts.size()) - 1e-12));
    if (k < 3) throw std::invalid_argument("fewer than 3 tail points to fit");
    std::vector<double> xs, ys;
    for (std::size_t i = pts.size() - k; i < pts.size(); ++i) {
        if (pts[i].second == 0) throw std::domain_error("cannot fit a zero count");
        const auto n = static_cast<double>(pts[i].first);
        xs.push_back(log_n ? std::log(n) : n);
        ys.push_back(std::log(static_cast<double>(pts[i].second)));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(k));
    fit.n_min = pts[pts.size() - k].first;
    fit.n_max = pts.back().first;
    fit.points_used = k;
    return fit;
}

}  // namespace

SlopeFit fit_poly_slope(std::span<const CountRecord> records, double eps, double tail_fraction) {
    return fit_tail(records, eps, tail_fraction, true);
}

SlopeFit fit_exp_rate(std::span<const CountRecord> records, double eps, double tail_fraction) {
    return fit_tail(records, eps, tail_fraction, false);
}

EntropyEstimate estimate_entropy(std::vector<CountRecord> records, std::span<const double> epss, EntropyMode mode,
                                 double tail_fraction) {
    EntropyEstimate est;
    est.mode = mode;
    est.headline = -std::numeric_limits<double>::infinity();
    for (double eps : epss) {
        const SlopeFit fit = mode == EntropyMode::polynomial ? fit_poly_slope(records, eps, tail_fraction)
                                                             : fit_exp_rate(records, eps, tail_fraction);
        est.fits.push_back({eps, fit});
        est.headline = std::max(est.headline, fit.slope);
    }
    est.note = "headline = max tail slope over the eps grid; a finite-resolution stand-in for the eps -> 0 limit";
    est.records = std::move(records);
    return est;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t n0, std::uint64_t ratio, std::size_t steps) {
    if (n0 == 0 || ratio < 2 || steps == 0) throw std::invalid_argument("geometric grid needs n0 >= 1, ratio >= 2, steps >= 1");
    std::vector<std::uint64_t> out{n0};
    while (out.size() < steps) out.push_back(checked_mul(out.back(), ratio));
    return out;
}

}  // namespace polyent
