#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyent/bowen.hpp"
#include "polyent/constructions.hpp"
#include "polyent/product.hpp"
#include "polyent/symbolic.hpp"
#include "polyent/tower.hpp"

namespace polyent {

enum class CountMethod { greedy_separated, greedy_spanning, construction_A, construction_S, symbolic_exact };
enum class BoundKind { lower_bound_s, upper_bound_r, exact };

std::string_view to_string(CountMethod m);
std::string_view to_string(BoundKind b);
CountMethod parse_count_method(std::string_view s);
/// Direction of the bound a method's count gives.
BoundKind bound_of(CountMethod m);

struct CountRecord {
    std::uint64_t n = 0;
    double eps = 0.0;
    std::uint64_t count = 0;
    CountMethod method = CountMethod::greedy_separated;
    BoundKind bound = BoundKind::lower_bound_s;

    friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

enum class LevelCapPolicy {
    automatic,            // spanning_threshold for greedy-spanning, separated_threshold otherwise
    fixed,                // levels 1..fixed_levels
    spanning_threshold,   // levels 1..H(n, eps) + margin
    separated_threshold,  // levels 1..ceil(D(n, eps)) + margin (H + margin outside the power family)
};

/// How count_table samples a system for the greedy methods.
struct SamplerSpec {
    std::size_t grid = 1000;
    LevelCapPolicy policy = LevelCapPolicy::automatic;
    std::uint32_t fixed_levels = 10;
    std::uint32_t level_margin = kLevelMargin;
    std::uint64_t seed = kDefaultSeed;
};

template <SampledSystem S>
Resolution resolve(const S&, const SamplerSpec& spec, std::uint64_t, double, CountMethod) {
    return {spec.grid, spec.fixed_levels, spec.seed};
}
Resolution resolve(const CircleTower& tower, const SamplerSpec& spec, std::uint64_t n, double eps,
                   CountMethod method);

template <SampledSystem S>
std::vector<point_of<S>> sample_for(const S& sys, const SamplerSpec& spec, std::uint64_t n, double eps,
                                    CountMethod method) {
    return sys.sample(resolve(sys, spec, n, eps, method));
}

inline constexpr std::size_t kMaxProductSample = std::size_t{1} << 22;

template <DynamicalSystem A, DynamicalSystem B>
std::vector<std::pair<point_of<A>, point_of<B>>> sample_for(const ProductSystem<A, B>& sys,
                                                            const SamplerSpec& spec, std::uint64_t n,
                                                            double eps, CountMethod method) {
    auto sa = sample_for(sys.first(), spec, n, eps, method);
    auto sb = sample_for(sys.second(), spec, n, eps, method);
    if (!sa.empty() && sb.size() > kMaxProductSample / sa.size())
        throw std::length_error("product sample exceeds " + std::to_string(kMaxProductSample) + " points");
    return ProductSystem<A, B>::product_points(sa, sb);
}

/// Exact s_n(eps) = r_n(eps) of a subshift under the 2^-|k| metric: the
/// number of distinct words of length n + 2j, j = cylinder radius of eps.
/// Orbit subshifts count factors of a generated window 10x that length.
std::uint64_t symbolic_exact_count(const Subshift& shift, std::uint64_t n, double eps);

/// Radius j with 2^-j >= eps > 2^-(j+1), capped at the metric window; -1 if eps > 1.
int cylinder_radius(double eps, std::size_t metric_window);

/// Closed-form counts: #A / #S on towers, symbolic counts on subshifts (an
/// exact count serves either construction), products multiply.
std::uint64_t analytic_count(const CircleTower& tower, CountMethod method, std::uint64_t n, double eps);
std::uint64_t analytic_count(const Subshift& shift, CountMethod method, std::uint64_t n, double eps);

template <class S>
std::uint64_t analytic_count(const S&, CountMethod method, std::uint64_t, double) {
    throw std::invalid_argument(std::string("method ") + std::string(to_string(method)) +
                                " has no closed form for this system");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

template <DynamicalSystem A, DynamicalSystem B>
std::uint64_t analytic_count(const ProductSystem<A, B>& sys, CountMethod method, std::uint64_t n, double eps) {
    return checked_mul(analytic_count(sys.first(), method, n, eps), analytic_count(sys.second(), method, n, eps));
}

void validate_grids(std::span<const std::uint64_t> ns, std::span<const double> epss);

/// One record per (eps, n), eps-major in the given order.
template <DynamicalSystem S>
std::vector<CountRecord> count_table(const S& sys, const SamplerSpec& spec, std::span<const std::uint64_t> ns,
                                     std::span<const double> epss, CountMethod method) {
    validate_grids(ns, epss);
    std::vector<CountRecord> out;
    out.reserve(ns.size() * epss.size());
    for (double eps : epss) {
        for (std::uint64_t n : ns) {
            std::uint64_t count = 0;
            if (method == CountMethod::greedy_separated || method == CountMethod::greedy_spanning) {
                if constexpr (requires { sample_for(sys, spec, n, eps, method); }) {
                    const auto sample = sample_for(sys, spec, n, eps, method);
                    std::span<const point_of<S>> view(sample);
                    count = method == CountMethod::greedy_separated
                                ? greedy_separated_indices(sys, view, n, eps).size()
                                : greedy_spanning_indices(sys, view, n, eps).size();
                } else {
                    throw std::invalid_argument("greedy counting needs a sampled system");
                }
            } else {
                count = analytic_count(sys, method, n, eps);
            }
            out.push_back({n, eps, count, method, bound_of(method)});
        }
    }
    return out;
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root mean square of the fit residuals.
    double residual = 0.0;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    std::size_t points_used = 0;
};

inline constexpr double kDefaultTailFraction = 0.5;

/// Least squares of log(count) on log(n) over the largest ceil(tail_fraction * k)
/// n-values recorded at this eps. The slope estimates h_pol at scale eps.
SlopeFit fit_poly_slope(std::span<const CountRecord> records, double eps,
                        double tail_fraction = kDefaultTailFraction);

/// Same window, log(count) on n: the slope estimates h_top at scale eps.
SlopeFit fit_exp_rate(std::span<const CountRecord> records, double eps,
                      double tail_fraction = kDefaultTailFraction);

enum class EntropyMode { polynomial, topological };
std::string_view to_string(EntropyMode m);

struct EpsFit {
    double eps = 0.0;
    SlopeFit fit;
};

struct EntropyEstimate {
    EntropyMode mode = EntropyMode::polynomial;
    std::vector<EpsFit> fits;
    /// Max of the per-eps slopes: the finite-grid stand-in for the eps -> 0 limit.
    double headline = 0.0;
    std::string note;
    std::vector<CountRecord> records;
};

EntropyEstimate estimate_entropy(std::vector<CountRecord> records, std::span<const double> epss,
                                 EntropyMode mode, double tail_fraction = kDefaultTailFraction);

template <DynamicalSystem S>
EntropyEstimate eps_sweep(const S& sys, const SamplerSpec& spec, std::span<const std::uint64_t> ns,
                          std::span<const double> epss, CountMethod method,
                          EntropyMode mode = EntropyMode::polynomial,
                          double tail_fraction = kDefaultTailFraction) {
    return estimate_entropy(count_table(sys, spec, ns, epss, method), epss, mode, tail_fraction);
}

/// n0, n0*ratio, ..., n0*ratio^(steps-1).
std::vector<std::uint64_t> geometric_grid(std::uint64_t n0, std::uint64_t ratio, std::size_t steps);

inline const std::vector<double> kDefaultEpsGrid{0.2, 0.1, 0.05, 0.02};

}  // namespace polyent
