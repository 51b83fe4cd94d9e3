#include <doctest.h>

#include "polyent/diagnostics.hpp"
#include "polyent/rotation.hpp"
#include "polyent/tower.hpp"

using namespace polyent;

TEST_CASE("word complexity") {
    auto golden = sturmian_generate(kGoldenAlpha, 0, 2999);
    auto prof = complexity_profile(golden, 64);
    for (std::size_t i = 0; i < prof.size(); ++i) CHECK(prof[i] == i + 2);
    auto mh = morse_hedlund(prof);
    CHECK(mh.above_diagonal);
    CHECK_FALSE(mh.eventually_periodic);

    SymbolicWord per(0, {0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1});
    auto pp = complexity_profile(per, 6);
    CHECK(pp == std::vector<std::uint64_t>{2, 4, 4, 4, 4, 4});
    auto v = morse_hedlund(pp);
    CHECK(v.eventually_periodic);
    CHECK(v.plateau_at == 2u);
    CHECK_FALSE(v.above_diagonal);
    CHECK_THROWS(word_complexity(per, 17));
}

TEST_CASE("return times") {
    CircleRotation r(0.25);
    CHECK(return_time(r, CirclePoint(0.1), 0.01, 10) == 4u);
    CircleRotation irr(kGoldenAlpha);
    CHECK(return_time(irr, CirclePoint(0.0), 0.1, 100) == 5u);
    CircleTower t(SequenceFamily::exponential());
    auto pts = t.sample({20, 5, kDefaultSeed});
    auto rep = uniform_recurrence_check(t, std::span<const TowerPoint>(pts), 0.1, 200);
    CHECK(rep.all_within);
    auto strict = uniform_recurrence_check(t, std::span<const TowerPoint>(pts), 0.1, 2);
    CHECK_FALSE(strict.all_within);
    CHECK(strict.first_failure == 0u);
}

TEST_CASE("distality gap") {
    CircleTower t(SequenceFamily::exponential());
    TowerPoint p(0.2, Level::finite(2)), q(0.2, Level::finite(3));
    CHECK(distality_gap(t, p, q, 1000) == doctest::Approx(std::exp(-2.0) - std::exp(-3.0)));
    CHECK(distality_gap(t, TowerPoint(0.1, Level::finite(1)), TowerPoint(0.3, Level::finite(1)), 50) ==
          doctest::Approx(0.2));
    CHECK_THROWS(distality_gap(t, p, p, 3));
}
