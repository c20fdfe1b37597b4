#include <doctest.h>

#include <cmath>

#include "hypk/deform.hpp"
#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"

using namespace hypk;

TEST_CASE("auxiliary surface") {
    const PantsGraph g = presets::genus2_theta();
    const FNCoordinates x{{1e-3, 2.0, 0.9}, {0.3, -0.2, 0.1}};
    const FNCoordinates y = auxiliary_surface(g, x);
    CHECK(y.lengths[0] == constants::a1);
    CHECK(y.lengths[1] == x.lengths[1]);
    CHECK(y.lengths[2] == x.lengths[2]);
    CHECK(y.twists == x.twists);
    const FNCoordinates yy = auxiliary_surface(g, y);
    CHECK(yy.lengths == y.lengths);
    CHECK(yy.twists == y.twists);
    const FNCoordinates fat{{1.0, 2.0, 3.0}, {0, 0, 0}};
    CHECK(auxiliary_surface(g, fat).lengths == fat.lengths);
}

TEST_CASE("auxiliary bounds on a pinched theta surface") {
    const PantsGraph g = presets::genus2_theta();
    const FNCoordinates x{{1e-2, 2.0, 2.0}, {0.0, 0.0, 0.0}};
    const DeformationReport r = check_auxiliary_bounds(g, x, auxiliary_surface(g, x), 2 * collar_half_width(1e-2) + 5.0);
    CHECK(r.sys_y_ok);
    CHECK(r.short_edges == std::vector<int>{0});
    CHECK(r.sys_x == doctest::Approx(1e-2).epsilon(1e-9));
    CHECK(r.max_disjoint_ratio <= 1 + 1e-9);
    CHECK(r.R > 0);
    CHECK(r.R == doctest::Approx(r.max_crossing_ratio / std::fabs(std::log(r.sys_x))));
    bool crossing = false, disjoint = false;
    for (const auto& row : r.rows) {
        (row.crossing_short ? crossing : disjoint) = true;
        CHECK(row.ratio == doctest::Approx(row.before / row.after));
    }
    CHECK(crossing);
    CHECK(disjoint);
    CHECK(deformation_csv(r, build_holonomy(g, x).generator_names()).rfind("id,", 0) == 0);

    CHECK_THROWS_AS(check_auxiliary_bounds(g, x, x, 12.0), DomainError);
    const FNCoordinates fat{{1.0, 2.0, 2.0}, {0, 0, 0}};
    CHECK_THROWS_AS(check_auxiliary_bounds(g, fat, fat, 12.0), DomainError);
}

TEST_CASE("lengthening") {
    const PantsGraph g = presets::genus2_dumbbell();
    const FNCoordinates x{{1.0, 0.5, 1.0}, {0.1, 0.2, 0.3}};
    const FNCoordinates y = lengthen_curves(g, x, {1}, 3.0);
    CHECK(y.lengths == std::vector<double>{1.0, 3.0, 1.0});
    CHECK(y.twists == x.twists);
    CHECK_THROWS_AS(lengthen_curves(g, x, {1}, 0.2), DomainError);
    CHECK_THROWS_AS(lengthen_curves(g, x, {7}, 3.0), DomainError);
}

TEST_CASE("twist orbit") {
    const PantsGraph g = presets::genus2_theta();
    const FNCoordinates x{{1.3, 2.0, 2.5}, {0.1, -0.2, 0.3}};
    const Holonomy h = build_holonomy(g, x);
    const TwistOrbit o = twist_orbit(g, x, h.dual_loops[0], 0, 4);
    REQUIRE(o.n.size() == 9);
    CHECK(o.n.front() == -4);
    CHECK(o.n.back() == 4);
    int best = 0;
    for (std::size_t i = 1; i < o.n.size(); ++i)
        if (o.length[i] < o.length[best]) best = static_cast<int>(i);
    CHECK(o.argmin == o.n[best]);
    CHECK(o.min_length == o.length[best]);
    // Length grows roughly linearly in |n| far from the minimum.
    CHECK(o.length.front() > o.length[4]);
    CHECK(o.length.back() > o.length[4]);

    const TwistOrbit flat = twist_orbit(g, x, h.pants_loops[1], 0, 2);
    CHECK(flat.disjoint);
    for (double l : flat.length) CHECK(l == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(flat.argmin == 0);
    CHECK_THROWS_AS(twist_orbit(g, x, h.pants_loops[1], 0, 2, true), CurveDisjoint);
}

TEST_CASE("twist descent") {
    const PantsGraph g = presets::genus2_theta();
    const FNCoordinates x{{1.0, 1.0, 1.0}, {2.3, -1.6, 0.0}};
    const Holonomy h = build_holonomy(g, x);
    const Word w = h.dual_loops[0];
    const TwistDescent d = minimize_over_twists(g, x, w, {0, 1, 2}, 5);
    CHECK(d.min_length <= d.initial_length);
    CHECK(d.initial_length == doctest::Approx(word_length(h, w)).epsilon(1e-12));
    FNCoordinates moved = x;
    for (std::size_t i = 0; i < d.edges.size(); ++i) moved.twists[d.edges[i]] += d.offsets[i];
    CHECK(word_length(build_holonomy(g, moved), w) == doctest::Approx(d.min_length).epsilon(1e-9));
    // No single +-1 move improves the result.
    if (!d.window_exhausted)
        for (int e = 0; e < 3; ++e)
            for (int s : {-1, 1}) {
                FNCoordinates n = moved;
                n.twists[e] += s;
                CHECK(word_length(build_holonomy(g, n), w) >= d.min_length * (1 - 1e-12));
            }
    CHECK_THROWS_AS(minimize_over_twists(g, x, w, {0, 0}, 3), DomainError);
}
