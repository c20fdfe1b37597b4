#include <doctest.h>

#include <cmath>

#include "hypk/optsearch.hpp"

using namespace hypk;

TEST_CASE("fold twist") {
    CHECK(fold_twist(0.0) == 0.0);
    CHECK(fold_twist(0.5) == doctest::Approx(-0.5));
    CHECK(fold_twist(1.25) == doctest::Approx(0.25));
    CHECK(fold_twist(-0.75) == doctest::Approx(0.25));
    for (double t = -3; t < 3; t += 0.37) {
        const double f = fold_twist(t);
        CHECK(f >= -0.5);
        CHECK(f < 0.5);
        CHECK(std::fabs(std::remainder(f - t, 1.0)) <= 1e-12);
    }
}

TEST_CASE("small minimization run") {
    SearchConfig c;
    c.max_evaluations = 12;
    c.cutoff = 7.0;
    const FNCoordinates init{{2.0, 2.0, 2.0}, {0.0, 0.0, 0.0}};
    for (SearchMethod m : {SearchMethod::NelderMead, SearchMethod::CoordinateDescent}) {
        c.method = m;
        const SearchTrace t = minimize_k(presets::genus2_theta(), init, c);
        REQUIRE_FALSE(t.iterates.empty());
        REQUIRE(t.best >= 0);
        CHECK(t.iterates.size() <= static_cast<std::size_t>(c.max_evaluations));
        const double start = t.iterates.front().khat;
        CHECK(t.iterates[t.best].khat <= start);
        for (const auto& it : t.iterates) {
            for (double l : it.coords.lengths) {
                CHECK(l >= c.min_length * (1 - 1e-12));
                CHECK(l <= c.max_length * (1 + 1e-12));
            }
            for (double tw : it.coords.twists) {
                CHECK(tw >= -0.5);
                CHECK(tw < 0.5);
            }
        }
        CHECK(t.confirmed.cutoff == doctest::Approx(c.cutoff + c.confirm_margin));
        CHECK(trace_csv(t).rfind("index,restart", 0) == 0);
    }
}

TEST_CASE("restarts are reproducible") {
    SearchConfig c;
    c.max_evaluations = 8;
    c.restarts = 2;
    c.cutoff = 7.0;
    const FNCoordinates init{{1.5, 2.5, 3.0}, {0.2, -0.3, 0.1}};
    c.workers = 1;
    const SearchTrace a = minimize_k(presets::genus2_theta(), init, c);
    c.workers = 2;
    const SearchTrace b = minimize_k(presets::genus2_theta(), init, c);
    CHECK(trace_csv(a) == trace_csv(b));
}
