#include "hypk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hypk/curves.hpp"
#include "hypk/deform.hpp"
#include "hypk/errors.hpp"
#include "hypk/estimator.hpp"
#include "hypk/hyptrig.hpp"
#include "hypk/moebius.hpp"

namespace hypk {

namespace {

void expect(SuiteResult& r, bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
}

FNCoordinates random_coords(int edges, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.5, 3.0), tw(-0.5, 0.5);
    FNCoordinates x;
    for (int e = 0; e < edges; ++e) {
        x.lengths.push_back(len(rng));
        x.twists.push_back(tw(rng));
    }
    return x;
}

void trig_suite(SuiteResult& r) {
    const double a1 = constants::a1;
    for (int i = 0; i < 1000; ++i) {
        double x = a1 * std::pow(1e-8, 1.0 - (i + 0.5) / 1000.0);
        double w = collar_half_width(x);
        if (!(w >= std::fabs(std::log(x)) && std::fabs(std::log(x)) >= std::sqrt(2.0)))
            r.failures.push_back("collar chain fails at l = " + std::to_string(x));
    }
    for (double l = 0.01; l < 10; l *= 1.3) {
        double s = std::sinh(l / 2);
        expect(r, collar_circle_length(l, collar_half_width(l)) <= 2 * std::sqrt(1 + s * s) * (1 + 1e-12),
               "collar boundary circle too long at l = " + std::to_string(l));
    }
    for (double a : {0.1, 0.7, 2.0})
        for (double b : {0.3, 1.1, 4.0})
            expect(r, std::fabs(perp_distinct(a, b, 1.0) - perp_distinct(b, a, 1.0)) <= 1e-12 * perp_distinct(a, b, 1.0),
                   "perpendicular not symmetric");
    // Rounding the trace 2 cosh(L/2) costs about 1e-16 / L^2 in relative length.
    for (double L = 1e-3; L <= 20; L *= 1.5)
        expect(r, std::fabs(trace_to_length(2 * std::cosh(L / 2)) - L) <= std::max(1e-12, 1e-15 / (L * L)) * L,
               "trace does not invert at L = " + std::to_string(L));
    for (double eta : {0.1, 1.0, 3.0}) expect(r, std::fabs(arc_with_feet(0, 0, eta) - eta) <= 1e-14 * eta, "arc with zero feet");
}

void moebius_suite(SuiteResult& r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        Isometry m = Isometry::rotation(u(rng)) * Isometry::translation(u(rng)) * Isometry::rotation(u(rng));
        expect(r, std::fabs(m.det() - 1) <= 1e-12, "composition leaves determinant 1");
    }
    for (double L : {0.5, 1.0, 5.0})
        expect(r, std::fabs(Isometry::translation(L).translation_length() - L) <= 1e-12 * L,
               "translation length of a translation");
    for (int i = 0; i < 5; ++i) {
        Holonomy h = build_holonomy(presets::genus2_theta(), random_coords(3, rng));
        for (const auto& d : validate(h, 3).defects) r.failures.push_back("moebius defect: " + d);
    }
}

void holonomy_suite(SuiteResult& r, std::mt19937_64& rng) {
    for (int i = 0; i < 20; ++i) {
        const PantsGraph g = i % 2 ? presets::genus2_dumbbell() : presets::genus2_theta();
        FNCoordinates x = random_coords(3, rng);
        Holonomy h = build_holonomy(g, x);
        for (int e = 0; e < 3; ++e) {
            double l = word_length(h, h.pants_loops[e]);
            expect(r, std::fabs(l - x.lengths[e]) <= 1e-9 * x.lengths[e],
                   "pants curve " + std::to_string(e) + " not recovered on surface " + std::to_string(i));
        }
    }
}

void intersection_suite(SuiteResult& r) {
    for (const PantsGraph& g : {presets::genus2_theta(), presets::genus2_dumbbell(), presets::fig5()}) {
        FNCoordinates x;
        x.lengths.assign(g.num_edges(), 2.0);
        x.twists.assign(g.num_edges(), 0.0);
        Holonomy h = build_holonomy(g, x);
        PairingMatrix p;
        try {
            p = pairing_matrix(h);
        } catch (const DegenerateBasis& e) {
            r.failures.push_back(std::string("pairing not unimodular: ") + e.what());
            continue;
        }
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j) expect(r, p.m[i][j] == -p.m[j][i], "pairing not antisymmetric");
        std::vector<Word> loops = h.pants_loops;
        loops.insert(loops.end(), h.dual_loops.begin(), h.dual_loops.end());
        for (const auto& u : loops)
            for (const auto& v : loops) {
                if (canonical_rotation(u) == canonical_rotation(v)) continue;
                long long alg = algebraic_int(abelianize(h, u), abelianize(h, v), p);
                expect(r, signed_int(h, u, v) == alg, "signed count differs from the pairing");
            }
    }
}

void lemma33_suite(SuiteResult& r, int workers) {
    for (double pinch : {1e-2, 1e-3}) {
        FNCoordinates x{{pinch, 2.0, 2.0}, {0.0, 0.0, 0.0}};
        const PantsGraph g = presets::genus2_theta();
        EnumerationConfig c;
        c.workers = workers;
        try {
            // The cutoff reaches past the collar, so crossing classes are compared too.
            const double cutoff = 2 * collar_half_width(pinch) + 5.0;
            DeformationReport rep = check_auxiliary_bounds(g, x, auxiliary_surface(g, x), cutoff, c);
            expect(r, rep.sys_y_ok, "sys(Y) differs from a1");
            r.notes.push_back("pinch " + std::to_string(pinch) + ": R = " + std::to_string(rep.R) + " over " +
                              std::to_string(rep.rows.size()) + " classes");
        } catch (const RegimeViolation& e) {
            r.failures.push_back(e.what());
        }
    }
}

void fault_suite(SuiteResult& r) {
    Holonomy h = build_holonomy(presets::genus2_theta(), FNCoordinates{{2, 2, 2}, {0, 0, 0}});
    // Injected fault: one gluing matrix loses unit determinant.
    h.local_glue[0].a *= 1.01;
    for (const auto& d : validate(h, 2).defects) r.failures.push_back("moebius defect: " + d);
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"trig", "moebius", "holonomy", "intersection", "lemma33", "fault-determinant"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int workers) {
    SuiteResult r;
    r.suite = name;
    std::mt19937_64 rng(seed);
    if (name == "trig") trig_suite(r);
    else if (name == "moebius") moebius_suite(r, rng);
    else if (name == "holonomy") holonomy_suite(r, rng);
    else if (name == "intersection") intersection_suite(r);
    else if (name == "lemma33") lemma33_suite(r, workers);
    else if (name == "fault-determinant") fault_suite(r);
    else throw DomainError("unknown suite '" + name + "'");
    return r;
}

SuiteResult verify_surface(const SurfaceData& s, double cutoff, int workers) {
    SuiteResult r;
    r.suite = "surface";
    Holonomy h = build_holonomy(s.graph, s.coords);
    for (const auto& d : validate(h, 3).defects) r.failures.push_back("holonomy defect: " + d);
    try {
        pairing_matrix(h);
    } catch (const DegenerateBasis& e) {
        r.failures.push_back(e.what());
    }
    EnumerationConfig c;
    c.workers = workers;
    const CurveTable t = enumerate_classes(h, cutoff, c);
    for (const auto& e : t.entries) {
        if (!e.simple) continue;
        for (int k = 0; k < s.graph.num_edges(); ++k)
            if (e.crossings[k] > 0 && !(e.length > 2 * collar_half_width(s.coords.lengths[k])))
                r.failures.push_back("collar bound fails for " + word_to_string(e.word, h.generator_names()));
    }
    try {
        const double sys = systole(h, t).length, sys_h = homological_systole(h, t).length;
        expect(r, sys <= sys_h, "systole exceeds the homological systole");
        const KEstimate k = k_lower_bound(h, t, workers);
        expect(r, k.value <= k.envelope, "K estimate above 9 / sys_h^2");
        r.notes.push_back("sys_h = " + std::to_string(sys_h) + ", khat = " + std::to_string(k.value));
    } catch (const EmptyTable&) {
        r.notes.push_back("no simple class below the cutoff");
    }
    return r;
}

}  // namespace hypk
