#include "hypk/deform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"
#include "hypk/parallel.hpp"

namespace hypk {

FNCoordinates auxiliary_surface(const PantsGraph& g, const FNCoordinates& x) {
    x.validate(g);
    FNCoordinates y = x;
    for (double& l : y.lengths)
        if (l < constants::a1) l = constants::a1;
    return y;
}

namespace {

double min_simple_length(const CurveTable& t) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : t.entries)
        if (e.simple) m = std::min(m, e.length);
    return m;
}

// One oriented representative per unoriented class.
bool is_representative(const Word& w) { return w <= canonical_rotation(inverse_word(w)); }

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

DeformationReport check_auxiliary_bounds(const PantsGraph& g, const FNCoordinates& x, const FNCoordinates& y,
                                         double cutoff, const EnumerationConfig& config) {
    if (y.lengths != auxiliary_surface(g, x).lengths || y.twists != x.twists)
        throw DomainError("y is not the auxiliary surface of x");
    DeformationReport r;
    for (int e = 0; e < g.num_edges(); ++e)
        if (x.lengths[e] < constants::a1) r.short_edges.push_back(e);
    if (r.short_edges.empty()) throw DomainError("sys(X) is not below a1");

    Holonomy hx = build_holonomy(g, x);
    Holonomy hy = build_holonomy(g, y);
    CurveTable tx = enumerate_classes(hx, cutoff, config);
    // The raised curves have length a1 on Y, so the systole of Y lies below 1.
    CurveTable ty = enumerate_classes(hy, 1.0, config);
    r.certified = tx.certified;
    r.sys_x = std::min(min_simple_length(tx), *std::min_element(x.lengths.begin(), x.lengths.end()));
    r.sys_y = std::min(min_simple_length(ty), *std::min_element(y.lengths.begin(), y.lengths.end()));
    r.sys_y_ok = std::fabs(r.sys_y - constants::a1) <= 1e-8;

    std::vector<const CurveEntry*> reps;
    for (const auto& e : tx.entries)
        if (e.simple && is_representative(e.word)) reps.push_back(&e);
    r.rows.resize(reps.size());
    parallel_for(reps.size(), config.workers, [&](std::size_t i) {
        const CurveEntry& e = *reps[i];
        DeformationRow& row = r.rows[i];
        row.id = static_cast<int>(i);
        row.word = e.word;
        row.before = e.length;
        row.after = word_length(hy, e.word);
        for (int s : r.short_edges) row.crossing_short |= e.crossings[s] > 0;
        row.ratio = row.before / row.after;
    });
    const double log_sys = std::fabs(std::log(r.sys_x));
    for (const auto& row : r.rows) {
        if (row.crossing_short) {
            r.max_crossing_ratio = std::max(r.max_crossing_ratio, row.ratio);
        } else {
            r.max_disjoint_ratio = std::max(r.max_disjoint_ratio, row.ratio);
            if (row.ratio > 1 + 1e-9)
                throw RegimeViolation("class " + word_to_string(row.word, hx.generator_names()) +
                                      " disjoint from the short curves has ratio " + real(row.ratio));
        }
    }
    r.R = r.max_crossing_ratio / log_sys;
    return r;
}

std::string deformation_csv(const DeformationReport& r, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "id,word,length_before,length_after,regime,ratio\n";
    for (const auto& row : r.rows)
        os << row.id << ',' << word_to_string(row.word, names) << ',' << real(row.before) << ','
           << real(row.after) << ',' << (row.crossing_short ? "crossing-short" : "disjoint") << ','
           << real(row.ratio) << '\n';
    return os.str();
}

FNCoordinates lengthen_curves(const PantsGraph& g, const FNCoordinates& x, const std::vector<int>& targets,
                              double delta) {
    x.validate(g);
    FNCoordinates y = x;
    for (int e : targets) {
        if (e < 0 || e >= g.num_edges()) throw DomainError("edge " + std::to_string(e) + " out of range");
        if (!(delta >= x.lengths[e]))
            throw DomainError("delta " + real(delta) + " shortens edge " + std::to_string(e));
        y.lengths[e] = delta;
    }
    return y;
}

namespace {

double shifted_length(const PantsGraph& g, const FNCoordinates& x, const Word& w, const std::vector<int>& edges,
                      const std::vector<int>& offsets) {
    FNCoordinates y = x;
    for (std::size_t k = 0; k < edges.size(); ++k) y.twists[edges[k]] += offsets[k];
    return word_length(build_holonomy(g, y), w);
}

}  // namespace

TwistOrbit twist_orbit(const PantsGraph& g, const FNCoordinates& x, const Word& w, int e, int window, bool strict,
                       int workers) {
    if (window < 1) throw DomainError("window must be at least 1");
    if (e < 0 || e >= g.num_edges()) throw DomainError("edge " + std::to_string(e) + " out of range");
    TwistOrbit o;
    o.disjoint = edge_crossings(build_holonomy(g, x), w)[e] == 0;
    if (o.disjoint && strict) throw CurveDisjoint("word misses edge " + std::to_string(e));
    for (int n = -window; n <= window; ++n) o.n.push_back(n);
    o.length.resize(o.n.size());
    parallel_for(o.n.size(), workers, [&](std::size_t i) { o.length[i] = shifted_length(g, x, w, {e}, {o.n[i]}); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < o.n.size(); ++i) {
        const int a = o.n[i], b = o.n[best];
        if (o.length[i] < o.length[best] ||
            (o.length[i] == o.length[best] && (std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b))))
            best = i;
    }
    o.argmin = o.n[best];
    o.min_length = o.length[best];
    return o;
}

TwistDescent minimize_over_twists(const PantsGraph& g, const FNCoordinates& x, const Word& w,
                                  const std::vector<int>& edges, int window) {
    if (window < 1) throw DomainError("window must be at least 1");
    if (std::set<int>(edges.begin(), edges.end()).size() != edges.size())
        throw DomainError("repeated edge in twist descent");
    for (int e : edges)
        if (e < 0 || e >= g.num_edges()) throw DomainError("edge " + std::to_string(e) + " out of range");
    TwistDescent d;
    d.edges = edges;
    d.offsets.assign(edges.size(), 0);
    d.initial_length = d.min_length = shifted_length(g, x, w, edges, d.offsets);
    // A move must beat the current length by more than rounding.
    auto better = [](double a, double b) { return a < b - 1e-12 * std::max(1.0, b); };
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            for (int dir : {-1, 1}) {
                while (std::abs(d.offsets[k] + dir) <= window) {
                    auto trial = d.offsets;
                    trial[k] += dir;
                    double l = shifted_length(g, x, w, edges, trial);
                    if (!better(l, d.min_length)) break;
                    d.offsets = trial;
                    d.min_length = l;
                    ++d.moves;
                    moved = true;
                }
            }
        }
    }
    for (int o : d.offsets) d.window_exhausted |= std::abs(o) == window;
    return d;
}

}  // namespace hypk
