#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "hypk/errors.hpp"
#include "hypk/estimator.hpp"
#include "hypk/hyptrig.hpp"

using namespace hypk;

namespace {

FNCoordinates constant(int edges, double l) {
    return FNCoordinates{std::vector<double>(edges, l), std::vector<double>(edges, 0.0)};
}

}  // namespace

TEST_CASE("systoles and the K estimate on the theta surface") {
    const Holonomy h = build_holonomy(presets::genus2_theta(), constant(3, 2.0));
    const CurveTable t = enumerate_classes(h, 8.0);
    const SystoleResult s = systole(h, t);
    const SystoleResult sh = homological_systole(h, t);
    CHECK(s.length == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sh.length >= s.length);
    const KEstimate k = k_lower_bound(h, t);
    CHECK(k.value > 0);
    CHECK(std::llabs(k.intersection) == 1);
    CHECK(k.value == doctest::Approx(1.0 / (k.length_alpha * k.length_beta)).epsilon(1e-12));
    CHECK(k.envelope == doctest::Approx(9.0 / (k.sys_h * k.sys_h)).epsilon(1e-12));
    CHECK(k.value <= k.envelope);
    // Two pants curves never meet, so the best pair involves a curve of length above 2.
    CHECK(k.value < 0.25);

    const KEstimate smaller = k_lower_bound(h, restrict_table(t, 5.0));
    CHECK(smaller.value <= k.value);
    CHECK(k_lower_bound(h, t, 1).value == k_lower_bound(h, t, 4).value);

    CHECK_THROWS_AS(k_lower_bound(h, enumerate_classes(h, 1.0)), EmptyTable);
    CHECK_THROWS_AS(systole(h, enumerate_classes(h, 1.0)), EmptyTable);
}

TEST_CASE("homological systole skips separating curves") {
    const Holonomy h = build_holonomy(presets::genus2_dumbbell(), FNCoordinates{{2.0, 0.5, 2.0}, {0, 0, 0}});
    const CurveTable t = enumerate_classes(h, 6.0);
    CHECK(systole(h, t).length == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(homological_systole(h, t).length > 0.5 + 1e-6);
}

TEST_CASE("crossing number") {
    const Holonomy h = build_holonomy(presets::genus2_theta(), constant(3, 2.0));
    const CurveTable t = enumerate_classes(h, 4.4);
    for (const auto& e : t.entries) {
        if (!e.simple) continue;
        for (int k = 0; k < 3; ++k) CHECK(crossing_number(h, h.pants_loops[k], e) == e.crossings[k]);
    }
}

TEST_CASE("predictor and dual bounds on the genus 3 family") {
    const Holonomy h = build_holonomy(presets::fig5(), presets::example1(10, 1.0));
    const CurveTable t = enumerate_classes(h, sweep_cutoff(10));
    const AsympPrediction p = asymp_predictor(h, t);
    REQUIRE_FALSE(p.gammas.empty());
    REQUIRE(p.argmax >= 0);
    for (const auto& d : p.gammas) {
        CHECK(d.gamma_length < 1.0);
        CHECK(d.value == doctest::Approx(1.0 / (d.gamma_length * d.alpha_length)).epsilon(1e-12));
        CHECK(d.value <= p.predictor);
    }
    const KEstimate k = k_lower_bound(h, t);
    CHECK(p.predictor <= k.value * (1 + 1e-12));

    const DualBound b = dual_curve_bound_check(h, t, h.pants_loops[0]);
    CHECK(b.collar_ok);
    CHECK(b.beta_length >= 2 * collar_half_width(b.gamma_length));
    CHECK(b.k_pair == doctest::Approx(1.0 / (b.gamma_length * b.beta_length)).epsilon(1e-12));

    // A generous threshold leaves no short curve without a dual in a tiny table.
    CHECK_THROWS_AS(asymp_predictor(h, enumerate_classes(h, 0.5), 1.0), NoDualFound);
}

TEST_CASE("short homology basis") {
    const Holonomy h = build_holonomy(presets::genus2_theta(), FNCoordinates{{1.1, 2.3, 0.7}, {0.2, -0.1, 0.4}});
    const CurveTable t = enumerate_classes(h, 8.0);
    const HomologyBasis b = homology_basis_search(h, t);
    REQUIRE(b.curves.size() == 4);
    CHECK(std::llabs(b.determinant) == 1);
    for (std::size_t i = 1; i < b.curves.size(); ++i) CHECK(b.curves[i - 1].length <= b.curves[i].length);
    for (const auto& c : b.curves) CHECK(c.length <= c.bound);
    CHECK(b.curves[0].length == doctest::Approx(b.sys_h).epsilon(1e-12));
    REQUIRE(b.pair_i >= 0);
    CHECK(b.pair_j < 3);
    CHECK(b.pair_value >= b.floor);
    CHECK_THROWS_AS(homology_basis_search(h, enumerate_classes(h, 1.5)), RankDeficient);
}

TEST_CASE("surgery witness") {
    const Holonomy h = build_holonomy(presets::genus2_theta(), constant(3, 2.0));
    const CurveTable t = enumerate_classes(h, 6.0);
    const Word alpha = h.dual_loops[0];
    const SurgeryWitness w = surgery_witness_search(h, t, alpha, {h.pants_loops[0]}, SurgeryRegime::Direction);
    CHECK(w.homology_ok);
    CHECK(w.length_ok);
    CHECK(w.intersection_ok);
    CHECK(w.total_length <= w.length_bound * (1 + 1e-12));
    CHECK_FALSE(w.witness.empty());
}

TEST_CASE("side restricted estimate") {
    const Holonomy h = build_holonomy(presets::genus2_dumbbell(), FNCoordinates{{1.0, 0.2, 1.0}, {0, 0, 0}});
    // Classes crossing the separating curve do so twice, at about 6 per crossing, so the
    // dual x0 x2 (length about 15) is added by hand to a short table.
    CurveTable t = enumerate_classes(h, 6.0);
    const Word dual{1, 3};
    t.entries.push_back(CurveEntry{canonical_rotation(dual), word_length(h, dual), abelianize(h, dual),
                                   self_int_count(h, dual) == 0, edge_crossings(h, dual)});
    REQUIRE(t.entries.back().simple);
    const SideRestrictedK s = side_restricted_k(h, t, {1});
    REQUIRE(s.sides.size() == 2);
    CHECK(s.excluded > 0);
    for (const auto& side : s.sides) {
        CHECK_FALSE(side.empty);
        CHECK(side.estimate.value <= s.unrestricted.value * (1 + 1e-12));
    }
    CHECK(s.max_over_sides <= s.unrestricted.value * (1 + 1e-12));
    CHECK_THROWS_AS(side_restricted_k(h, t, {0}), DomainError);
    const Holonomy fat = build_holonomy(presets::genus2_dumbbell(), constant(3, 1.0));
    CHECK_THROWS_AS(side_restricted_k(fat, enumerate_classes(fat, 6.0), {1}), DomainError);
}

TEST_CASE("sweep cutoff") {
    CHECK(sweep_cutoff(10) == doctest::Approx(8 * std::log(10.0) + 14));
    CHECK(asymptotic_sweep(AsymptoticFamily::Example1, 1.0, {}).empty());
}
