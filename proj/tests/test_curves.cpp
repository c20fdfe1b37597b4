#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hypk/curves.hpp"
#include "hypk/errors.hpp"

using namespace hypk;

namespace {

FNCoordinates constant(int edges, double l) {
    return FNCoordinates{std::vector<double>(edges, l), std::vector<double>(edges, 0.0)};
}

const Holonomy& theta() {
    static const Holonomy h = build_holonomy(presets::genus2_theta(), constant(3, 2.0));
    return h;
}

HomologyClass minus(HomologyClass a) {
    for (int& v : a) v = -v;
    return a;
}

}  // namespace

TEST_CASE("word reduction") {
    CHECK(cyclically_reduced(Word{1, 2, -2, 3, -1}) == Word{3});
    CHECK(canonical_rotation(Word{3, 1, 2}) == Word{1, 2, 3});
    CHECK(is_proper_power(Word{1, 2, 1, 2}));
    CHECK_FALSE(is_proper_power(Word{1, 2, 2}));
    CHECK(reduce_word(Word{1, -1, 2}) == Word{2});
}

TEST_CASE("abelianization") {
    const Holonomy& h = theta();
    const auto basis = homology_basis_loops(h);
    REQUIRE(basis.size() == 4);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        HomologyClass unit(4, 0);
        unit[i] = 1;
        CHECK(abelianize(h, basis[i]) == unit);
        CHECK(abelianize(h, inverse_word(basis[i])) == minus(unit));
    }
    const Word x = basis[0], y = basis[2];
    const Word comm = concat(concat(x, y), concat(inverse_word(x), inverse_word(y)));
    CHECK(abelianize(h, comm) == HomologyClass(4, 0));
    const Word xy = concat(x, y);
    HomologyClass sum = abelianize(h, x);
    for (int i = 0; i < 4; ++i) sum[i] += abelianize(h, y)[i];
    CHECK(abelianize(h, xy) == sum);
}

TEST_CASE("pairing matrix") {
    for (const PantsGraph& g : {presets::genus2_theta(), presets::genus2_dumbbell(), presets::fig5(), presets::fig5_prime()}) {
        const Holonomy h = build_holonomy(g, constant(g.num_edges(), 1.5));
        const PairingMatrix p = pairing_matrix(h);
        REQUIRE(p.size() == 2 * g.genus);
        std::vector<std::vector<long long>> m(p.size(), std::vector<long long>(p.size()));
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j) {
                CHECK(p.m[i][j] == -p.m[j][i]);
                m[i][j] = p.m[i][j];
            }
        CHECK(std::llabs(integer_determinant(m)) == 1);
        const auto basis = homology_basis_loops(h);
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j)
                if (i != j) CHECK(signed_int(h, basis[i], inverse_word(basis[j])) == -p.m[i][j]);
    }
}

TEST_CASE("algebraic intersection is bilinear and alternating") {
    const PairingMatrix p = pairing_matrix(theta());
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_class = [&] {
        HomologyClass v(4);
        for (int& c : v) c = coef(rng);
        return v;
    };
    for (int i = 0; i < 100; ++i) {
        HomologyClass a = random_class(), b = random_class(), c = random_class(), s(4);
        for (int k = 0; k < 4; ++k) s[k] = a[k] + b[k];
        CHECK(algebraic_int(a, a, p) == 0);
        CHECK(algebraic_int(a, b, p) == -algebraic_int(b, a, p));
        CHECK(algebraic_int(s, c, p) == algebraic_int(a, c, p) + algebraic_int(b, c, p));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            HomologyClass a(4, 0), b(4, 0);
            a[i] = b[j] = 1;
            CHECK(algebraic_int(a, b, p) == p.m[i][j]);
        }
}

TEST_CASE("geometric intersections on the theta surface") {
    const Holonomy& h = theta();
    CHECK(geometric_int_signed(h, h.pants_loops[0], h.pants_loops[1]).empty());
    for (int e = 0; e < 3; ++e) CHECK(geometric_int(h, h.dual_loops[e], h.pants_loops[e]) == 1);
    CHECK_THROWS_AS(geometric_int_signed(h, h.pants_loops[0], inverse_word(h.pants_loops[0])), SharedGeodesic);

    const CurveTable t = enumerate_classes(h, 4.4);
    const PairingMatrix p = pairing_matrix(h);
    int pairs = 0;
    for (std::size_t i = 0; i < t.entries.size() && pairs < 100; ++i)
        for (std::size_t j = i + 1; j < t.entries.size() && pairs < 100; j += 3) {
            const Word& u = t.entries[i].word;
            const Word& v = t.entries[j].word;
            if (canonical_rotation(inverse_word(u)) == v) continue;
            const auto cs = geometric_int_signed(h, u, v);
            int sum = 0;
            for (const auto& c : cs) sum += c.sign;
            const long long alg = algebraic_int(t.entries[i].homology, t.entries[j].homology, p);
            CHECK(sum == alg);
            CHECK(std::llabs(alg) <= static_cast<long long>(cs.size()));
            const auto rev = geometric_int_signed(h, u, inverse_word(v));
            REQUIRE(rev.size() == cs.size());
            int rsum = 0;
            for (const auto& c : rev) rsum += c.sign;
            CHECK(rsum == -sum);
            ++pairs;
        }
    CHECK(pairs == 100);
}

TEST_CASE("geometric count exceeds the algebraic one across a separating curve") {
    const Holonomy h = build_holonomy(presets::genus2_dumbbell(), FNCoordinates{{1.0, 2.0, 1.0}, {0.1, 0.0, -0.2}});
    const CurveTable t = enumerate_classes(h, 7.0);
    const Word& sep = h.pants_loops[1];
    int strict = 0;
    for (const auto& e : t.entries) {
        if (!e.simple || e.crossings[1] == 0) continue;
        const auto cs = geometric_int_signed(h, sep, e.word);
        int sum = 0;
        for (const auto& c : cs) sum += c.sign;
        CHECK(sum == 0);
        CHECK(static_cast<int>(cs.size()) == e.crossings[1]);
        if (!cs.empty()) ++strict;
    }
    CHECK(strict > 0);
}

TEST_CASE("self intersection") {
    const Holonomy& h = theta();
    for (int e = 0; e < 3; ++e) CHECK(self_int_count(h, h.pants_loops[e]) == 0);
    // x0 y0 and even x0^2 y0 are simple with this marking; on edges 1 and 2 the squared
    // word is not.
    CHECK(self_int_count(h, concat(h.pants_loops[0], h.dual_loops[0])) == 0);
    CHECK(self_int_count(h, concat(concat(h.pants_loops[0], h.pants_loops[0]), h.dual_loops[0])) == 0);
    for (int e : {1, 2})
        CHECK(self_int_count(h, concat(concat(h.pants_loops[e], h.pants_loops[e]), h.dual_loops[e])) == 3);
    CHECK_THROWS_AS(self_int_count(h, Word{1, 3, 1, 3}), SharedGeodesic);
    CHECK(is_primitive(h, Word{1, 3}));
    CHECK_FALSE(is_primitive(h, Word{1, 3, 1, 3}));
}

TEST_CASE("separating criterion") {
    const Holonomy h = build_holonomy(presets::fig5_prime(), constant(6, 1.5));
    CHECK_FALSE(is_nonseparating(h, h.pants_loops[1]));
    CHECK(is_nonseparating(h, h.pants_loops[0]));
    const Holonomy d = build_holonomy(presets::genus2_dumbbell(), constant(3, 2.0));
    CHECK_FALSE(is_nonseparating(d, d.pants_loops[1]));
    for (int e : {0, 2}) CHECK(is_nonseparating(d, d.dual_loops[e]));
    const Holonomy& t = theta();
    for (int e = 0; e < 3; ++e) {
        CHECK(is_nonseparating(t, t.pants_loops[e]));
        CHECK(is_nonseparating(t, t.dual_loops[e]));
    }
}

TEST_CASE("enumeration") {
    const Holonomy& h = theta();
    const CurveTable small = enumerate_classes(h, 2.1);
    REQUIRE(small.entries.size() == 6);
    std::set<Word> pants;
    for (const auto& w : h.pants_loops) {
        pants.insert(canonical_rotation(w));
        pants.insert(canonical_rotation(inverse_word(w)));
    }
    for (const auto& e : small.entries) {
        CHECK(pants.count(e.word) == 1);
        CHECK(e.length == doctest::Approx(2.0).epsilon(1e-9));
    }
    CHECK(enumerate_classes(h, 1.9).entries.empty());

    const CurveTable a = enumerate_classes(h, 3.5), b = enumerate_classes(h, 4.5);
    std::set<Word> big;
    for (const auto& e : b.entries) big.insert(e.word);
    for (const auto& e : a.entries) CHECK(big.count(e.word) == 1);
    CHECK(std::is_sorted(b.entries.begin(), b.entries.end(), [](const CurveEntry& x, const CurveEntry& y) {
        return x.length < y.length || (x.length == y.length && x.word < y.word);
    }));
    for (const auto& e : b.entries) {
        const Word inv = canonical_rotation(inverse_word(e.word));
        CHECK(std::any_of(b.entries.begin(), b.entries.end(), [&](const CurveEntry& o) { return o.word == inv; }));
    }
    const CurveTable r = restrict_table(b, 3.5);
    REQUIRE(r.entries.size() == a.entries.size());
    for (std::size_t i = 0; i < r.entries.size(); ++i) CHECK(r.entries[i].word == a.entries[i].word);

    EnumerationConfig tiny;
    tiny.node_limit = 10;
    CHECK_THROWS_AS(enumerate_classes(h, 6.0, tiny), BudgetExceeded);
}

TEST_CASE("enumeration does not depend on worker count") {
    const Holonomy h = build_holonomy(presets::genus2_theta(), FNCoordinates{{1.1, 2.3, 0.7}, {0.2, -0.1, 0.4}});
    EnumerationConfig one, four;
    one.workers = 1;
    four.workers = 4;
    const CurveTable a = enumerate_classes(h, 6.0, one), b = enumerate_classes(h, 6.0, four);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].word == b.entries[i].word);
        CHECK(a.entries[i].length == b.entries[i].length);
        CHECK(a.entries[i].simple == b.entries[i].simple);
    }
}

TEST_CASE("table round trip") {
    const CurveTable t = enumerate_classes(theta(), 4.4);
    const std::string path = "hypk_table_roundtrip.txt";
    save_table(t, path);
    const CurveTable u = load_table(path);
    std::remove(path.c_str());
    CHECK(u.cutoff == t.cutoff);
    CHECK(u.certified == t.certified);
    REQUIRE(u.entries.size() == t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        CHECK(u.entries[i].word == t.entries[i].word);
        CHECK(u.entries[i].length == t.entries[i].length);
        CHECK(u.entries[i].homology == t.entries[i].homology);
        CHECK(u.entries[i].crossings == t.entries[i].crossings);
    }
}
