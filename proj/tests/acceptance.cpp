// Acceptance suite: one PASS/FAIL line per criterion, each under a pinned
// runtime budget. `acceptance 3 5` runs criteria 3 and 5; no arguments runs all.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "polyent/bowen.hpp"
#include "polyent/constructions.hpp"
#include "polyent/diagnostics.hpp"
#include "polyent/estimation.hpp"
#include "polyent/experiment.hpp"
#include "polyent/format.hpp"
#include "polyent/rotation.hpp"

using namespace polyent;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

const std::vector<SequenceFamily> kFamilies{SequenceFamily::exponential(), SequenceFamily::power(1),
                                             SequenceFamily::power(2), SequenceFamily::power(3)};

std::vector<std::uint64_t> pow2_grid(int lo, int hi) {
    return geometric_grid(std::uint64_t{1} << lo, 2, static_cast<std::size_t>(hi - lo + 1));
}

// H by walking n = 1, 2, ... until N a_n < eps.
std::uint64_t walk_H(std::uint64_t N, double eps, const SequenceFamily& fam) {
    if (fam.kind() == SequenceFamily::Kind::power && fam.exponent() == 1.0) {
        // N / n < eps  <=>  n > N / eps; walk from just below the bound.
        std::uint64_t n = static_cast<std::uint64_t>(static_cast<double>(N) / eps);
        n = n > 2 ? n - 2 : 1;
        while (!(static_cast<double>(N) * fam.term(static_cast<std::uint32_t>(n)) < eps)) ++n;
        return n;
    }
    std::uint64_t n = 1;
    while (!(static_cast<double>(N) * fam.term(static_cast<std::uint32_t>(n)) < eps)) ++n;
    return n;
}

Outcome cardinality_identity() {
    Outcome o;
    int cases = 0;
    for (const auto& fam : kFamilies)
        for (std::uint64_t N = 10; N <= 1'000'000; N *= 10)
            for (double eps : kDefaultEpsGrid) {
                const auto a = build_A(N, eps, fam);
                const std::uint64_t expect = (static_cast<std::uint64_t>(std::floor(1.0 / eps)) + 1) * (walk_H(N, eps, fam) + 1);
                ++cases;
                if (a.points.size() != expect) {
                    o.pass = false;
                    o.detail = fam.describe() + " N=" + std::to_string(N) + " eps=" + format_real(eps) + ": " +
                               std::to_string(a.points.size()) + " != " + std::to_string(expect);
                    return o;
                }
            }
    const bool frozen = build_A(100, 0.1, SequenceFamily::exponential()).points.size() == 88;
    o.pass = frozen;
    o.detail = std::to_string(cases) + " (family, N, eps) cases match; #A(100, 0.1) on Exp = 88";
    return o;
}

Outcome spanning_certification() {
    Outcome o;
    int cases = 0;
    std::size_t checked = 0;
    for (const auto& fam : {SequenceFamily::exponential(), SequenceFamily::power(2)})
        for (std::uint64_t N : {10u, 100u, 1000u})
            for (double eps : {0.2, 0.1, 0.05}) {
                auto a = build_A(N, eps, fam);
                certify_A(a, 2000);
                ++cases;
                checked += a.checked_against;
                if (!(a.verified && a.strict)) {
                    o.pass = false;
                    o.detail = fam.describe() + " N=" + std::to_string(N) + " eps=" + format_real(eps) +
                               (a.verified ? ": covered but " + std::to_string(a.non_strict) + " points only at distance eps"
                                           : ": " + a.witness);
                    return o;
                }
            }
    o.detail = std::to_string(cases) + " constructions strictly span " + std::to_string(checked) + " sample points";
    return o;
}

Outcome separated_certification() {
    Outcome o;
    int cases = 0, strict_cases = 0;
    std::size_t non_strict_pairs = 0;
    bool drift_ok = true;
    for (double c : {1.0, 2.0, 3.0})
        for (std::uint64_t N : {100u, 1000u, 10000u})
            for (double eps : {0.2, 0.1}) {
                auto s = build_S(N, eps, c);
                certify_S(s);
                ++cases;
                if (!s.verified || s.levels_dropped) {
                    o.pass = false;
                    o.detail = "c=" + format_real(c) + " N=" + std::to_string(N) + " eps=" + format_real(eps) +
                               " not separated: " + s.witness;
                    return o;
                }
                strict_cases += s.strict;
                non_strict_pairs += s.non_strict;
                drift_ok = drift_ok && s.drift_strict;
            }
    o.pass = strict_cases == cases;
    o.detail = std::to_string(cases) + " sets separated (>= eps); strict > eps in " + std::to_string(strict_cases) +
               "/" + std::to_string(cases) + "; level-drift pairs all strict: " + (drift_ok ? "yes" : "no") + "; " +
               std::to_string(non_strict_pairs) + " same-level pairs sit at exactly eps";
    return o;
}

std::string slope_list(const EntropyEstimate& est) {
    std::string s;
    for (const auto& f : est.fits) s += (s.empty() ? "" : " ") + fmt(f.fit.slope);
    return s;
}

Outcome vanishing_slope() {
    CircleTower t(SequenceFamily::exponential());
    const auto ns = pow2_grid(10, 24);
    const auto est = eps_sweep(t, SamplerSpec{}, ns, kDefaultEpsGrid, CountMethod::construction_A);
    Outcome o;
    for (const auto& f : est.fits) o.pass = o.pass && f.fit.slope <= 0.05;
    o.detail = "slopes per eps {0.2,0.1,0.05,0.02}: " + slope_list(est) + " (bound 0.05)";
    return o;
}

Outcome power_band() {
    Outcome o;
    const auto ns = pow2_grid(10, 24);
    const std::vector<double> eps01{0.1};
    for (int ci = 1; ci <= 3; ++ci) {
        const double c = ci;
        CircleTower t(SequenceFamily::power(c));
        const auto a = eps_sweep(t, SamplerSpec{}, ns, kDefaultEpsGrid, CountMethod::construction_A);
        const auto s = eps_sweep(t, SamplerSpec{}, ns, kDefaultEpsGrid, CountMethod::construction_S);
        bool ok = true;
        for (const auto& f : a.fits) ok = ok && std::fabs(f.fit.slope - 1.0 / c) <= 0.03;
        for (const auto& f : s.fits) ok = ok && std::fabs(f.fit.slope - 1.0 / (c + 1)) <= 0.03;
        SamplerSpec spec;
        spec.grid = 1000;
        const auto g = eps_sweep(t, spec, pow2_grid(6, 12), eps01, CountMethod::greedy_separated);
        const double gs = g.fits[0].fit.slope;
        ok = ok && gs >= 1.0 / (c + 1) - 0.1 && gs <= 1.0 / c + 0.1;
        o.pass = o.pass && ok;
        o.detail += "c=" + std::to_string(ci) + " A[" + slope_list(a) + "] S[" + slope_list(s) + "] greedy " + fmt(gs) + "; ";
    }
    return o;
}

Outcome sturmian_exactness() {
    Outcome o;
    for (long double alpha : {kGoldenAlpha, std::sqrt(2.0L) - 1.0L}) {
        const auto shift = Subshift::sturmian(alpha);
        for (std::uint64_t n = 1; n <= 64; ++n)
            if (symbolic_exact_count(shift, n, 1.0) != n + 1) {
                o.pass = false;
                o.detail = shift.describe() + ": count at n=" + std::to_string(n) + " is not n+1";
                return o;
            }
        const auto est = eps_sweep(shift, SamplerSpec{}, pow2_grid(4, 12), kDefaultEpsGrid, CountMethod::symbolic_exact);
        const bool band = est.headline >= 0.95 && est.headline <= 1.05;
        const auto word = shift.language_word(10 * 64 + 64);
        bool hedlund = true;
        for (std::size_t n = 1; n <= 64 && hedlund; ++n) {
            const auto starts = hedlund_separated(word, n);
            std::vector<SymbolicPoint> pts;
            for (auto k : starts) pts.push_back(word.point_at(k));
            hedlund = pts.size() == n + 1 &&
                      verify_separated(shift, std::span<const SymbolicPoint>(pts), n, 1.0).separated;
        }
        o.pass = o.pass && band && hedlund;
        o.detail += shift.describe() + ": p(n)=n+1 for n<=64, headline " + fmt(est.headline) +
                    ", Hedlund families " + (hedlund ? "verified" : "FAILED") + "; ";
    }
    return o;
}

Outcome recurrence_suite() {
    Outcome o;
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int rotations = 0;
    for (int i = 0; i < 100; ++i) {
        CircleRotation r(u(rng));
        const auto pts = r.sample({16, 0, kDefaultSeed});
        for (double eps : {0.5, 0.25, 0.1, 0.05}) {
            const auto m = static_cast<std::uint64_t>(std::ceil(1.0 / eps));
            const auto rep = uniform_recurrence_check(r, std::span<const CirclePoint>(pts), eps, m);
            ++rotations;
            if (!rep.all_within) {
                o.pass = false;
                o.detail = "rotation by " + format_real(r.angle()) + " has no return within " + std::to_string(m);
                return o;
            }
        }
    }
    const auto full = Subshift::full_shift(2);
    for (std::size_t m = 1; m <= 32; ++m) {
        std::vector<Symbol> w(m + 1, 1);
        w[0] = 0;
        const auto x = full.periodic_point(w);
        const bool no_return = !return_time(full, x, 1.0, m).has_value();
        const auto orbit = backward_orbit_set(full, x, m);
        const auto chk = verify_separated(full, std::span<const SymbolicPoint>(orbit), m, 1.0);
        if (!no_return || orbit.size() != m + 1 || !chk.separated) {
            o.pass = false;
            o.detail = "backward orbit at m=" + std::to_string(m) + " failed";
            return o;
        }
    }
    o.detail = std::to_string(rotations) + " (angle, eps) rotation checks return within ceil(1/eps); "
               "backward orbits (m,1)-separated with m+1 points for m=1..32";
    return o;
}

Outcome product_bound() {
    Outcome o;
    auto a = build_S(1000, 0.2, 2), b = build_S(1000, 0.2, 2);
    certify_S(a);
    certify_S(b);
    auto prod = product_system(CircleTower(SequenceFamily::power(2)), CircleTower(SequenceFamily::power(2)));
    const auto pts = decltype(prod)::product_points(a.points.materialize(), b.points.materialize());
    const auto chk = verify_separated(prod, std::span<const decltype(prod)::point_type>(pts), 1000, 0.2);
    const bool card = pts.size() == a.points.size() * b.points.size();
    const auto est = eps_sweep(prod, SamplerSpec{}, pow2_grid(10, 24), kDefaultEpsGrid, CountMethod::construction_S);
    bool slope = true;
    for (const auto& f : est.fits) slope = slope && f.fit.slope >= 2.0 / 3.0 - 0.05;
    o.pass = a.verified && b.verified && chk.separated && card && slope;
    o.detail = "S x S with " + std::to_string(pts.size()) + " = " + std::to_string(a.points.size()) + "^2 points " +
               (chk.separated ? "separated" : "NOT separated") + "; product slopes " + slope_list(est) + " (>= " +
               fmt(2.0 / 3.0 - 0.05) + ")";
    return o;
}

Outcome calibration() {
    Outcome o;
    double worst = 0.0;
    for (double C : {1.0, 3.7, 10.0})
        for (double s : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            std::vector<CountRecord> recs;
            for (std::uint64_t n = 256; n <= 65536; n *= 2)
                recs.push_back({n, 0.1, static_cast<std::uint64_t>(std::llround(C * std::pow(double(n), s))),
                                CountMethod::greedy_separated, BoundKind::lower_bound_s});
            worst = std::max(worst, std::fabs(fit_poly_slope(recs, 0.1).slope - s));
        }
    std::vector<CountRecord> geo;
    for (std::uint64_t n = 1; n <= 40; ++n)
        geo.push_back({n, 0.1, std::uint64_t{1} << n, CountMethod::symbolic_exact, BoundKind::exact});
    const double rate_err = std::fabs(fit_exp_rate(geo, 0.1).slope - std::log(2.0));
    o.pass = worst <= 0.02 && rate_err <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |slope - s| = %.2e (tol 0.02); |rate - ln 2| = %.2e (tol 1e-9)", worst, rate_err);
    o.detail = buf;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / ("polyent-accept-" + std::to_string(::getpid()));
    ExperimentConfig cfg;
    cfg.system = "tower-power:2";
    cfg.method = "greedy";
    cfg.n0 = 16;
    cfg.steps = 7;
    cfg.eps = {0.2, 0.1};
    cfg.grid = 500;
    cfg.out = dir.string();
    const int saved = omp_get_max_threads();
    const int max_threads = std::max(omp_get_num_procs(), 1);
    std::string ref_csv, ref_fit;
    std::ostringstream sink;
    int runs = 0;
    // Four threads as well, so the parallel paths run even on a one-core machine.
    for (int threads : {1, 1, max_threads, max_threads, 4, 4}) {
        omp_set_num_threads(threads);
        if (run_estimate(cfg, sink) != kExitOk) o.pass = false;
        const auto csv = slurp(dir / "counts.csv"), fit = slurp(dir / "fits.json");
        if (runs++ == 0) {
            ref_csv = csv;
            ref_fit = fit;
        } else if (csv != ref_csv || fit != ref_fit) {
            o.pass = false;
        }
    }
    omp_set_num_threads(saved);
    std::filesystem::remove_all(dir);
    o.pass = o.pass && !ref_csv.empty();
    o.detail = std::to_string(runs) + " greedy estimate runs at 1, " + std::to_string(max_threads) +
               " (machine maximum) and 4 threads: counts.csv and fits.json " + (o.pass ? "byte-identical" : "DIFFER");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "cardinality identity", 1.0, cardinality_identity},
        {2, "spanning certification", 120.0, spanning_certification},
        {3, "separated certification", 60.0, separated_certification},
        {4, "vanishing-entropy slope", 1.0, vanishing_slope},
        {5, "power-family band", 300.0, power_band},
        {6, "Sturmian exactness", 30.0, sturmian_exactness},
        {7, "recurrence suite", 10.0, recurrence_suite},
        {8, "product lower bound", 60.0, product_bound},
        {9, "estimator calibration", 1.0, calibration},
        {10, "determinism", 60.0, determinism},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < c.budget_s;
        const bool pass = out.pass && in_budget;
        failures += !pass;
        std::printf("%s [%d] %s (%.2f s, budget %.0f s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget_s, in_budget ? "" : ", OVER BUDGET", out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
