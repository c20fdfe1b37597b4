#include <doctest.h>

#include <cmath>
#include <random>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"
#include "hypk/moebius.hpp"

using namespace hypk;

namespace {

Isometry random_isometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    return Isometry::rotation(u(rng)) * Isometry::translation(u(rng)) * Isometry::rotation(u(rng));
}

Isometry random_hyperbolic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.3, 3.0);
    Isometry g = random_isometry(rng);
    return g * Isometry::translation(len(rng)) * g.inverse();
}

bool same_point(const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.is_infinity() || y.is_infinity()) return std::fabs(x.p * y.q - x.q * y.p) <= 1e-9 * (std::fabs(x.p) + std::fabs(y.p));
    return std::fabs(x.p / x.q - y.p / y.q) <= 1e-7 * (1 + std::fabs(x.p / x.q));
}

bool same_axis(const Axis& a, const Axis& b) {
    return same_point(a.repelling, b.repelling) && same_point(a.attracting, b.attracting);
}

bool equal_up_to_sign(const Isometry& x, const Isometry& y, double tol) {
    auto close = [&](double s) {
        return std::fabs(x.a - s * y.a) <= tol && std::fabs(x.b - s * y.b) <= tol && std::fabs(x.c - s * y.c) <= tol &&
               std::fabs(x.d - s * y.d) <= tol;
    };
    return close(1) || close(-1);
}

}  // namespace

TEST_CASE("composition identities") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Isometry a = random_isometry(rng), b = random_isometry(rng);
        CHECK(equal_up_to_sign(Isometry::identity() * a, a, 1e-14));
        CHECK(equal_up_to_sign(a * a.inverse(), Isometry::identity(), 1e-12));
        CHECK(std::fabs((a * b).det() - 1) <= 1e-12);
        CHECK(std::fabs((a * b).trace() - (b * a).trace()) <= 1e-12 * (1 + std::fabs((a * b).trace())));
        Isometry c = random_isometry(rng);
        CHECK(equal_up_to_sign((a * b) * c, a * (b * c), 1e-11));
    }
}

TEST_CASE("normalized") {
    Isometry m{2, 0, 0, 2};
    CHECK(normalized(m).det() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(normalized(Isometry{1, 0, 0, -1}), DomainError);
    CHECK_THROWS_AS(normalized(Isometry{0, 0, 0, 0}), DomainError);
}

TEST_CASE("diagonal normal form") {
    for (double L : {1e-3, 0.5, 2.0, 7.0}) {
        Isometry t = Isometry::translation(L);
        CHECK(t.is_hyperbolic());
        CHECK(t.translation_length() == doctest::Approx(L).epsilon(1e-12));
        CHECK(trace_to_length(t.trace()) == doctest::Approx(L).epsilon(1e-12));
        Axis ax = axis(t);
        CHECK(ax.repelling.is_infinity() == false);
        CHECK(std::fabs(ax.repelling.p / ax.repelling.q) <= 1e-12);
        CHECK(ax.attracting.is_infinity());
    }
    CHECK_THROWS_AS(axis(Isometry::rotation(0.7)), NotHyperbolic);
    CHECK_THROWS_AS(axis(Isometry::identity()), NotHyperbolic);
}

TEST_CASE("power lengths scale") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        Isometry a = random_hyperbolic(rng);
        double L = a.translation_length();
        Isometry p = a;
        for (int n = 2; n <= 5; ++n) {
            p = p * a;
            CHECK(std::fabs(p.translation_length() - n * L) <= 1e-9 * n * L);
        }
    }
}

TEST_CASE("axis equivariance and inversion") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        Isometry g = random_isometry(rng), a = random_hyperbolic(rng);
        CHECK(same_axis(axis(g * a * g.inverse()), apply(g, axis(a))));
        CHECK(same_axis(axis(a.inverse()), axis(a).reversed()));
    }
}

TEST_CASE("axes_cross on fixed axes") {
    const Axis vertical{BoundaryPoint::real(0), BoundaryPoint::infinity()};
    const Axis chord{BoundaryPoint::real(-1), BoundaryPoint::real(1)};
    Crossing c = axes_cross(vertical, chord);
    REQUIRE(c.kind == CrossKind::Cross);
    // Frozen convention: the chord from -1 to 1 passes from the left of the upward axis to its right.
    CHECK(c.sign == 1);
    Crossing r = axes_cross(vertical, chord.reversed());
    CHECK(r.kind == CrossKind::Cross);
    CHECK(r.sign == -c.sign);
    CHECK(axes_cross(chord, vertical).sign == -c.sign);

    CHECK(axes_cross(vertical, Axis{BoundaryPoint::real(1), BoundaryPoint::real(2)}).kind == CrossKind::Disjoint);
    CHECK(axes_cross(vertical, vertical.reversed()).kind == CrossKind::Shared);
    CHECK(axes_cross(vertical, vertical).kind == CrossKind::Shared);
    CHECK_THROWS_AS(axes_cross(vertical, Axis{BoundaryPoint::real(1e-12), BoundaryPoint::real(1)}),
                    NumericallyAmbiguous);
}

TEST_CASE("axes_cross symmetry and conjugation invariance") {
    std::mt19937_64 rng(14);
    int crosses = 0;
    for (int i = 0; i < 200; ++i) {
        Isometry a = random_hyperbolic(rng), b = random_hyperbolic(rng);
        Crossing ab, ba;
        try {
            ab = axes_cross(axis(a), axis(b));
            ba = axes_cross(axis(b), axis(a));
        } catch (const NumericallyAmbiguous&) {
            continue;
        }
        CHECK(ab.kind == ba.kind);
        if (ab.kind == CrossKind::Cross) {
            ++crosses;
            CHECK(ab.sign == -ba.sign);
        }
        if (i < 50) {
            Isometry g = random_isometry(rng);
            Crossing moved = axes_cross(apply(g, axis(a)), apply(g, axis(b)));
            CHECK(moved.kind == ab.kind);
            CHECK(moved.sign == ab.sign);
        }
        Crossing el = elements_cross(a, b);
        CHECK(el.kind == ab.kind);
        CHECK(el.sign == ab.sign);
    }
    CHECK(crosses > 10);
}

TEST_CASE("frame_of") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 20; ++i) {
        Axis ax = axis(random_hyperbolic(rng));
        Isometry f = frame_of(ax);
        CHECK(same_axis(apply(f, Axis{BoundaryPoint::real(0), BoundaryPoint::infinity()}), ax));
    }
}
