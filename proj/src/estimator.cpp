#include "hypk/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"
#include "hypk/parallel.hpp"

namespace hypk {

namespace {

bool nonzero(const HomologyClass& c) {
    return std::any_of(c.begin(), c.end(), [](int x) { return x != 0; });
}

// One oriented representative per unoriented class.
bool is_representative(const Word& w) { return w <= canonical_rotation(inverse_word(w)); }

SystoleResult shortest(const CurveTable& table, bool homological) {
    for (const auto& e : table.entries) {
        if (!e.simple || (homological && !nonzero(e.homology))) continue;
        // Entries are sorted by length, then word.
        return {e.length, e.word, table.certified && 2 * e.length <= table.cutoff};
    }
    throw EmptyTable(homological ? "no homologically nontrivial simple entry" : "no simple entry");
}

std::vector<long long> apply(const PairingMatrix& p, const HomologyClass& b) {
    std::vector<long long> q(p.size(), 0);
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) q[i] += static_cast<long long>(p.m[i][j]) * b[j];
    return q;
}

long long dot(const HomologyClass& a, const std::vector<long long>& q) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * q[i];
    return s;
}

struct PairCandidate {
    double value = -1;
    std::size_t i = 0, j = 0;
    long long intersection = 0;
};

// Max of |Int|/(l l) over pairs of the given entries; ties go to the lexicographically
// least ordered pair of words.
KEstimate scan_pairs(const std::vector<const CurveEntry*>& pool, const PairingMatrix& p, int workers) {
    std::vector<std::vector<long long>> q(pool.size());
    for (std::size_t j = 0; j < pool.size(); ++j) q[j] = apply(p, pool[j]->homology);
    auto ordered = [&](std::size_t i, std::size_t j) {
        return pool[i]->word <= pool[j]->word ? std::pair{i, j} : std::pair{j, i};
    };
    auto beats = [&](const PairCandidate& x, const PairCandidate& y) {
        if (x.value != y.value) return x.value > y.value;
        auto [xa, xb] = ordered(x.i, x.j);
        auto [ya, yb] = ordered(y.i, y.j);
        return std::tie(pool[xa]->word, pool[xb]->word) < std::tie(pool[ya]->word, pool[yb]->word);
    };
    std::vector<PairCandidate> best(pool.size());
    parallel_for(pool.size(), workers, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            long long k = dot(pool[i]->homology, q[j]);
            if (k == 0) continue;
            PairCandidate c{static_cast<double>(std::llabs(k)) / (pool[i]->length * pool[j]->length), i, j, k};
            if (best[i].value < 0 || beats(c, best[i])) best[i] = c;
        }
    });
    KEstimate est;
    PairCandidate top;
    for (const auto& c : best)
        if (c.value >= 0 && (top.value < 0 || beats(c, top))) top = c;
    if (top.value >= 0) {
        auto [a, b] = ordered(top.i, top.j);
        est.value = top.value;
        est.alpha = pool[a]->word;
        est.beta = pool[b]->word;
        est.length_alpha = pool[a]->length;
        est.length_beta = pool[b]->length;
        est.intersection = dot(pool[a]->homology, q[b]);
    }
    est.simple_classes = pool.size();
    return est;
}

void fill_envelope(KEstimate& est, const Holonomy& h, const CurveTable& table) {
    est.cutoff = table.cutoff;
    est.certified = table.certified;
    try {
        est.sys_h = homological_systole(h, table).length;
        est.envelope = 9.0 / (est.sys_h * est.sys_h);
    } catch (const EmptyTable&) {
        est.sys_h = 0;
        est.envelope = 0;
    }
}

std::vector<const CurveEntry*> nontrivial_simple(const CurveTable& table) {
    std::vector<const CurveEntry*> pool;
    for (const auto& e : table.entries)
        if (e.simple && nonzero(e.homology)) pool.push_back(&e);
    return pool;
}

}  // namespace

SystoleResult systole(const Holonomy&, const CurveTable& table) { return shortest(table, false); }

SystoleResult homological_systole(const Holonomy&, const CurveTable& table) { return shortest(table, true); }

KEstimate k_lower_bound(const Holonomy& h, const CurveTable& table, int workers) {
    if (std::none_of(table.entries.begin(), table.entries.end(), [](const CurveEntry& e) { return e.simple; }))
        throw EmptyTable("no simple entry");
    KEstimate est = scan_pairs(nontrivial_simple(table), pairing_matrix(h), workers);
    fill_envelope(est, h, table);
    return est;
}

int crossing_number(const Holonomy& h, const Word& gamma, const CurveEntry& c) {
    auto sp = as_slot_power(cyclic_form(h, gamma));
    if (sp && std::abs(sp->power) == 1) return c.crossings[h.graph.edge_at(sp->pants, sp->slot)];
    try {
        return geometric_int(h, gamma, c.word);
    } catch (const SharedGeodesic&) {
        return 0;
    }
}

namespace {

// Shortest nonseparating simple representative crossing gamma exactly once.
const CurveEntry* shortest_dual(const Holonomy& h, const CurveTable& table, const Word& gamma) {
    for (const auto& e : table.entries)
        if (e.simple && nonzero(e.homology) && is_representative(e.word) && crossing_number(h, gamma, e) == 1)
            return &e;
    return nullptr;
}

}  // namespace

AsympPrediction asymp_predictor(const Holonomy& h, const CurveTable& table, double threshold, int workers) {
    AsympPrediction out;
    out.threshold = threshold;
    std::vector<const CurveEntry*> gammas;
    for (const auto& e : table.entries)
        if (e.simple && nonzero(e.homology) && e.length <= threshold && is_representative(e.word))
            gammas.push_back(&e);
    if (gammas.empty()) throw NoDualFound("no nonseparating simple class of length at most the threshold");
    std::vector<const CurveEntry*> duals(gammas.size());
    parallel_for(gammas.size(), workers,
                 [&](std::size_t i) { duals[i] = shortest_dual(h, table, gammas[i]->word); });
    std::string missing;
    const auto names = h.generator_names();
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (!duals[i]) {
            missing += (missing.empty() ? "" : ", ") + word_to_string(gammas[i]->word, names);
            continue;
        }
        DualPair d{gammas[i]->word, gammas[i]->length, duals[i]->word, duals[i]->length, 0};
        d.value = 1.0 / (d.gamma_length * d.alpha_length);
        if (out.argmax < 0 || d.value > out.predictor) {
            out.predictor = d.value;
            out.argmax = static_cast<int>(out.gammas.size());
        }
        out.gammas.push_back(std::move(d));
    }
    if (!missing.empty()) throw NoDualFound("no dual below the cutoff for " + missing);
    return out;
}

DualBound dual_curve_bound_check(const Holonomy& h, const CurveTable& table, const Word& gamma) {
    const CurveEntry* beta = shortest_dual(h, table, gamma);
    if (!beta) throw NoDualFound("no simple class below the cutoff crosses the curve once");
    DualBound r;
    r.beta = beta->word;
    r.beta_length = beta->length;
    r.gamma_length = word_length(h, gamma);
    r.sys_h = homological_systole(h, table).length;
    const double g = h.graph.genus;
    r.ratio = r.beta_length / (g * (g + std::fabs(std::log(r.sys_h))));
    r.k_pair = 1.0 / (r.gamma_length * r.beta_length);
    r.collar_ok = r.beta_length >= 2 * collar_half_width(r.gamma_length);
    return r;
}

namespace {

long long gcd_of_minors(const std::vector<HomologyClass>& rows) {
    const int k = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows.front().size());
    long long g = 0;
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
        std::vector<std::vector<long long>> m(k, std::vector<long long>(k));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) m[r][c] = rows[r][cols[c]];
        g = std::gcd(g, std::llabs(integer_determinant(m)));
        if (g == 1) return 1;
        int i = k - 1;
        while (i >= 0 && cols[i] == n - k + i) --i;
        if (i < 0) return g;
        ++cols[i];
        for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
}

}  // namespace

HomologyBasis homology_basis_search(const Holonomy& h, const CurveTable& table) {
    HomologyBasis out;
    const int rank = 2 * h.graph.genus;
    out.sys_h = homological_systole(h, table).length;
    std::vector<HomologyClass> rows;
    // A subset of a basis spans a saturated sublattice: its maximal minors are coprime.
    for (const auto& e : table.entries) {
        if (!e.simple || !nonzero(e.homology) || !is_representative(e.word)) continue;
        rows.push_back(e.homology);
        if (gcd_of_minors(rows) != 1) {
            rows.pop_back();
            continue;
        }
        out.curves.push_back({e.word, e.length, e.homology, 0});
        if (static_cast<int>(rows.size()) == rank) break;
    }
    if (static_cast<int>(rows.size()) < rank)
        throw RankDeficient("simple classes below the cutoff span rank " + std::to_string(rows.size()) + " of " +
                            std::to_string(rank));
    std::vector<std::vector<long long>> m(rank, std::vector<long long>(rank));
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < rank; ++c) m[r][c] = rows[r][c];
    out.determinant = integer_determinant(m);
    const double g = h.graph.genus;
    for (int k = 1; k <= rank; ++k)
        out.curves[k - 1].bound = std::ldexp(1.0, 16) / std::min(out.sys_h, 1.0) *
                                  std::log(2 * g - k + 2) / (2 * g - k + 1) * g;
    const auto p = pairing_matrix(h);
    const int first = h.graph.genus + 1;
    for (int i = 0; i < first; ++i)
        for (int j = i + 1; j < first; ++j) {
            if (std::llabs(algebraic_int(out.curves[i].homology, out.curves[j].homology, p)) != 1) continue;
            double v = 1.0 / (out.curves[i].length * out.curves[j].length);
            if (v > out.pair_value) {
                out.pair_value = v;
                out.pair_i = i;
                out.pair_j = j;
            }
        }
    const double s = std::min(out.sys_h, 1.0) / std::log(g);
    out.floor = std::ldexp(1.0, -34) * s * s;
    return out;
}

SurgeryWitness surgery_witness_search(const Holonomy& h, const CurveTable& table, const Word& alpha,
                                      const std::vector<Word>& gammas, SurgeryRegime regime, int max_size) {
    if (max_size < 1) throw DomainError("witness size must be at least 1");
    SurgeryWitness out;
    out.alpha = canonical_rotation(alpha);
    out.alpha_length = word_length(h, alpha);
    out.gammas = gammas;
    out.regime = regime;
    const auto p = pairing_matrix(h);
    const HomologyClass target = abelianize(h, alpha);
    std::vector<HomologyClass> gamma_class;
    double slack = 0;
    for (const auto& g : gammas) {
        gamma_class.push_back(abelianize(h, g));
        const double l = word_length(h, g);
        slack = std::max(slack, l / std::fabs(std::log(l)));
    }
    out.length_bound = regime == SurgeryRegime::Direction ? out.alpha_length : out.alpha_length * (1 + slack);
    const double bound = out.length_bound * (1 + 1e-12);

    auto admissible = [&](const CurveEntry& e) {
        for (std::size_t k = 0; k < gammas.size(); ++k) {
            const int i = crossing_number(h, gammas[k], e);
            if (regime == SurgeryRegime::Direction) {
                if (std::llabs(algebraic_int(gamma_class[k], e.homology, p)) != i) return false;
            } else if (i > 1) {
                return false;
            }
        }
        return true;
    };
    std::vector<const CurveEntry*> pool;
    for (const auto& e : table.entries)
        if (e.simple && nonzero(e.homology) && e.length <= bound && admissible(e)) pool.push_back(&e);

    std::map<HomologyClass, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < pool.size(); ++i) by_class[pool[i]->homology].push_back(i);

    std::vector<std::size_t> chosen;
    auto finish = [&]() {
        out.witness.clear();
        out.lengths.clear();
        out.total_length = 0;
        HomologyClass sum(target.size(), 0);
        for (std::size_t i : chosen) {
            out.witness.push_back(pool[i]->word);
            out.lengths.push_back(pool[i]->length);
            out.total_length += pool[i]->length;
            for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += pool[i]->homology[c];
        }
        out.homology_ok = sum == target;
        out.length_ok = out.total_length <= out.length_bound + 1e-9;
        out.intersection_ok = true;
        for (std::size_t i : chosen) out.intersection_ok &= admissible(*pool[i]);
    };
    constexpr std::size_t kBudget = 50'000'000;
    // Depth-first over increasing pool indices; the last member is looked up by class.
    auto search = [&](auto&& self, int remaining, std::size_t from, double used, HomologyClass need) -> bool {
        if (remaining == 1) {
            ++out.subsets_tried;
            auto it = by_class.find(need);
            if (it == by_class.end()) return false;
            auto pos = std::lower_bound(it->second.begin(), it->second.end(), from);
            if (pos == it->second.end() || used + pool[*pos]->length > bound) return false;
            chosen.push_back(*pos);
            return true;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            if (used + remaining * pool[i]->length > bound || out.subsets_tried > kBudget) return false;
            HomologyClass rest = need;
            for (std::size_t c = 0; c < rest.size(); ++c) rest[c] -= pool[i]->homology[c];
            chosen.push_back(i);
            if (self(self, remaining - 1, i + 1, used + pool[i]->length, rest)) return true;
            chosen.pop_back();
        }
        return false;
    };
    for (int size = 1; size <= max_size; ++size) {
        chosen.clear();
        if (search(search, size, 0, 0.0, target)) {
            finish();
            return out;
        }
    }
    throw NotFound("no witness among " + std::to_string(pool.size()) + " admissible classes after " +
                   std::to_string(out.subsets_tried) + " subsets of size at most " + std::to_string(max_size));
}

SideRestrictedK side_restricted_k(const Holonomy& h, const CurveTable& table, const std::vector<int>& multicurve,
                                  int workers) {
    const PantsGraph& g = h.graph;
    std::set<int> cut(multicurve.begin(), multicurve.end());
    for (int e : cut) {
        if (e < 0 || e >= g.num_edges()) throw DomainError("edge " + std::to_string(e) + " out of range");
        if (!h.separating_edge[e]) throw DomainError("edge " + std::to_string(e) + " is not separating");
        if (!(h.coords.lengths[e] <= constants::a1))
            throw DomainError("edge " + std::to_string(e) + " is longer than a1");
    }
    std::vector<int> comp(g.num_pants());
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (int e = 0; e < g.num_edges(); ++e)
        if (!cut.count(e)) comp[find(g.edges[e].a.pants)] = find(g.edges[e].b.pants);
    std::map<int, int> side_of_root;
    SideRestrictedK out;
    for (int p = 0; p < g.num_pants(); ++p) {
        auto [it, fresh] = side_of_root.emplace(find(p), static_cast<int>(out.sides.size()));
        if (fresh) out.sides.emplace_back();
        out.sides[it->second].pants.push_back(p);
    }

    std::vector<std::vector<const CurveEntry*>> pools(out.sides.size());
    for (const auto& e : table.entries) {
        if (!e.simple || !nonzero(e.homology)) continue;
        bool crosses = false;
        for (int c : cut) crosses |= e.crossings[c] > 0;
        const CyclicForm f = cyclic_form(h, e.word);
        int pants = f.pants.empty() ? -1 : f.pants.front();
        if (auto sp = as_slot_power(f)) {
            // A multicurve component lies on two sides at once.
            if (cut.count(g.edge_at(sp->pants, sp->slot))) crosses = true;
            pants = sp->pants;
        }
        if (crosses || pants < 0) {
            ++out.excluded;
            continue;
        }
        pools[side_of_root.at(find(pants))].push_back(&e);
    }
    const auto p = pairing_matrix(h);
    for (std::size_t s = 0; s < out.sides.size(); ++s) {
        out.sides[s].empty = pools[s].empty();
        out.sides[s].estimate = scan_pairs(pools[s], p, workers);
        fill_envelope(out.sides[s].estimate, h, table);
        out.max_over_sides = std::max(out.max_over_sides, out.sides[s].estimate.value);
    }
    out.unrestricted = k_lower_bound(h, table, workers);
    return out;
}

double sweep_cutoff(int n) { return 8.0 * std::log(static_cast<double>(n)) + 14.0; }

std::vector<SweepRow> asymptotic_sweep(AsymptoticFamily family, double delta, const std::vector<int>& ns,
                                       int workers) {
    std::vector<SweepRow> rows;
    for (int n : ns) {
        if (n < 2) throw DomainError("sweep parameter n must be at least 2");
        SweepRow r;
        r.n = n;
        r.delta = family == AsymptoticFamily::Example1 ? delta : 0.0;
        const PantsGraph g = family == AsymptoticFamily::Example1 ? presets::fig5() : presets::fig5_prime();
        const FNCoordinates x =
            family == AsymptoticFamily::Example1 ? presets::example1(n, delta) : presets::example63(n);
        const Holonomy h = build_holonomy(g, x);
        r.cutoff = sweep_cutoff(n);
        EnumerationConfig config;
        config.workers = workers;
        const CurveTable table = enumerate_classes(h, r.cutoff, config);
        r.certified = table.certified;
        r.sys = systole(h, table).length;
        r.sys_h = homological_systole(h, table).length;
        r.khat = k_lower_bound(h, table, workers).value;
        r.predictor = asymp_predictor(h, table, 1.0, workers).predictor;
        const double norm = family == AsymptoticFamily::Example1
                                ? 2 * (1 + delta) * r.sys_h * std::fabs(std::log(r.sys_h))
                                : 2 * std::log(static_cast<double>(n)) / n;
        r.normalized_product = r.predictor * norm;
        r.normalized_khat = r.khat * norm;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hypk
