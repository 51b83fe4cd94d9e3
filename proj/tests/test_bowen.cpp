#include <doctest.h>

#include <omp.h>

#include <random>

#include "polyent/bowen.hpp"
#include "polyent/finite_system.hpp"
#include "polyent/rotation.hpp"
#include "polyent/symbolic.hpp"
#include "polyent/tower.hpp"

using namespace polyent;

namespace {

template <class P>
std::span<const P> view(const std::vector<P>& v) {
    return std::span<const P>(v);
}

struct Threads {
    explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
    int saved;
};

}  // namespace

TEST_CASE("greedy counts match the brute-force oracle") {
    CircleTower ex(SequenceFamily::exponential()), p2(SequenceFamily::power(2));
    auto s20 = ex.sample({20, 4, kDefaultSeed});
    CHECK(greedy_separated_indices(ex, view(s20), 10, 0.1).size() == 50);
    CHECK(greedy_separated_indices(p2, view(s20), 30, 0.15).size() == 30);
    auto s10 = ex.sample({10, 3, kDefaultSeed});
    CHECK(greedy_spanning_indices(ex, view(s10), 10, 0.2).size() == 8);
    CHECK(greedy_spanning_indices(p2, view(s10), 25, 0.25).size() == 8);
}

TEST_CASE("parallel kernels equal the serial references") {
    CircleTower t(SequenceFamily::power(2));
    auto pts = t.sample({97, 9, kDefaultSeed});
    auto serial = reference::greedy_separated_indices(t, view(pts), 40, 0.1);
    for (int threads : {1, 2, 4, 7}) {
        Threads guard(threads);
        CHECK(greedy_separated_indices(t, view(pts), 40, 0.1) == serial);
        auto kept = select_points(view(pts), std::span<const std::size_t>(serial));
        auto a = verify_separated(t, view(kept), 40, 0.1);
        auto b = reference::verify_separated(t, view(kept), 40, 0.1);
        CHECK(a.separated == b.separated);
        CHECK(a.non_strict_pairs == b.non_strict_pairs);
        CHECK(a.first_non_strict == b.first_non_strict);
        auto c = verify_spanning(t, view(kept), view(pts), 40, 0.1);
        auto d = reference::verify_spanning(t, view(kept), view(pts), 40, 0.1);
        CHECK(c.spans == d.spans);
        CHECK(c.non_strict_points == d.non_strict_points);
        CHECK(c.uncovered == d.uncovered);
    }
}

TEST_CASE("parallel greedy equals serial on shuffled samples") {
    CircleTower t(SequenceFamily::exponential());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TowerPoint> pts;
    for (int i = 0; i < 3000; ++i) pts.emplace_back(u(rng), i % 7 == 0 ? Level::base() : Level::finite(1 + rng() % 9));
    for (double eps : {0.3, 0.05, 0.01})
        for (std::size_t n : {1u, 50u}) {
            auto serial = reference::greedy_separated_indices(t, view(pts), n, eps);
            for (int threads : {1, 3, 8}) {
                Threads guard(threads);
                CHECK(greedy_separated_indices(t, view(pts), n, eps) == serial);
            }
        }
}

TEST_CASE("greedy separated is separated and maximal") {
    auto st = Subshift::sturmian(kGoldenAlpha);
    auto pts = st.sample({300, 0, kDefaultSeed});
    for (double eps : {1.0, 0.5, 0.2}) {
        auto kept = greedy_separated(st, view(pts), 6, eps);
        CHECK(verify_separated(st, view(kept), 6, eps).separated);
        // every sample point lies within eps of the kept set
        auto cover = verify_spanning(st, view(kept), view(pts), 6, eps);
        CHECK(cover.spans);
    }
}

TEST_CASE("greedy spanning covers its sample") {
    CircleTower t(SequenceFamily::exponential());
    auto pts = t.sample({50, 6, kDefaultSeed});
    for (std::size_t n : {1u, 10u, 100u}) {
        auto picked = greedy_spanning(t, view(pts), n, 0.1);
        auto chk = verify_spanning(t, view(picked), view(pts), n, 0.1);
        CHECK(chk.spans);
        CHECK_FALSE(chk.uncovered.has_value());
    }
}

TEST_CASE("separated sets never outnumber half-radius spanning sets") {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CircleTower t(SequenceFamily::power(1));
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<TowerPoint> pts;
        for (int i = 0; i < 400; ++i)
            pts.emplace_back(u(rng), i % 5 == 0 ? Level::base() : Level::finite(1 + rng() % 12));
        const std::size_t n = 5 + 20 * trial;
        for (double eps : {0.3, 0.1}) {
            auto s = greedy_separated_indices(t, view(pts), n, eps).size();
            auto r = greedy_spanning_indices(t, view(pts), n, 0.49 * eps).size();
            CHECK(s <= r);
        }
    }
}

TEST_CASE("exact maximum separated set bounds the greedy one") {
    CircleTower t(SequenceFamily::exponential());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<TowerPoint> pts;
        for (int i = 0; i < 18; ++i) pts.emplace_back(u(rng), Level::finite(1 + rng() % 4));
        auto exact = max_separated_exact(t, view(pts), 8, 0.2);
        auto greedy = greedy_separated_indices(t, view(pts), 8, 0.2);
        CHECK(greedy.size() <= exact.size());
        auto chosen = select_points(view(pts), std::span<const std::size_t>(exact));
        CHECK(verify_separated(t, view(chosen), 8, 0.2).separated);
    }
    std::vector<TowerPoint> big(21);
    CHECK_THROWS_AS(max_separated_exact(t, view(big), 2, 0.1), std::length_error);
}

TEST_CASE("trivial systems") {
    auto one = FiniteSystem::fixed_point();
    auto p1 = one.sample({});
    CHECK(greedy_separated_indices(one, view(p1), 1000, 0.01).size() == 1);
    auto iso = FiniteSystem::isolated_points(6, 0.5);
    auto p6 = iso.sample({});
    CHECK(greedy_separated_indices(iso, view(p6), 1000, 0.5).size() == 6);
    CHECK(greedy_separated_indices(iso, view(p6), 1000, 0.6).size() == 1);
    auto orbit = FiniteSystem::periodic_orbit(7);
    auto p7 = orbit.sample({});
    // counts of a periodic orbit stop growing with n
    CHECK(greedy_separated_indices(orbit, view(p7), 10, 0.3).size() ==
          greedy_separated_indices(orbit, view(p7), 10000, 0.3).size());
}

TEST_CASE("separation verdicts report witnesses and strictness") {
    CircleRotation r(0.0);
    std::vector<CirclePoint> pts{CirclePoint(0.0), CirclePoint(0.1), CirclePoint(0.25)};
    auto chk = verify_separated(r, view(pts), 3, 0.1);
    CHECK(chk.separated);
    CHECK_FALSE(chk.strict);
    CHECK(chk.non_strict_pairs == 1);
    CHECK(chk.first_non_strict == std::pair<std::size_t, std::size_t>{0, 1});
    auto bad = verify_separated(r, view(pts), 3, 0.12);
    CHECK_FALSE(bad.separated);
    CHECK(bad.witness == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(bad.witness_distance == doctest::Approx(0.1));
}
