#include "hypk/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"

namespace hypk {

void PantsGraph::validate() const {
    if (genus < 2) throw ValidationFailed("genus must be at least 2");
    if (static_cast<int>(edges.size()) != num_edges())
        throw ValidationFailed("expected " + std::to_string(num_edges()) + " edges");
    std::vector<int> used(num_pants() * 3, 0);
    for (const auto& e : edges) {
        for (const auto& s : {e.a, e.b}) {
            if (s.pants < 0 || s.pants >= num_pants() || s.slot < 0 || s.slot > 2)
                throw ValidationFailed("slot reference out of range");
            ++used[s.pants * 3 + s.slot];
        }
        if (e.a == e.b) throw ValidationFailed("edge glues a slot to itself");
    }
    for (int u : used)
        if (u != 1) throw ValidationFailed("every slot must be used exactly once");
    std::vector<bool> seen(num_pants(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (const auto& e : edges) {
            for (auto [u, v] : {std::pair{e.a.pants, e.b.pants}, std::pair{e.b.pants, e.a.pants}}) {
                if (u == p && !seen[v]) seen[v] = true, queue.push_back(v);
            }
        }
    }
    for (bool s : seen)
        if (!s) throw ValidationFailed("pants graph is disconnected");
}

int PantsGraph::edge_at(int pants, int slot) const {
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (edges[i].a == SlotRef{pants, slot} || edges[i].b == SlotRef{pants, slot}) return i;
    throw ValidationFailed("unused slot");
}

void FNCoordinates::validate(const PantsGraph& g) const {
    if (static_cast<int>(lengths.size()) != g.num_edges() || static_cast<int>(twists.size()) != g.num_edges())
        throw ValidationFailed("coordinate vector sizes do not match the edge count");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l)) throw ValidationFailed("lengths must be positive and finite");
    for (double t : twists)
        if (!std::isfinite(t)) throw ValidationFailed("twists must be finite");
}

namespace {

// Extended-precision matrix for the construction only: the hexagon walk produces
// entries of size 1/l^2 that centering later cancels.
struct Wide {
    long double a = 1, b = 0, c = 0, d = 1;

    static Wide translation(long double L) {
        long double h = std::exp(0.5L * L);
        return {h, 0, 0, 1 / h};
    }
    static Wide rotation(long double phi) {
        long double c = std::cos(0.5L * phi), s = std::sin(0.5L * phi);
        return {c, s, -s, c};
    }
    Wide inverse() const { return {d, -b, -c, a}; }
    Isometry narrow() const {
        return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d)};
    }
};

Wide operator*(const Wide& x, const Wide& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

long double wide_perp(long double l1, long double l2, long double l3) {
    long double s1 = std::sinh(l1 / 2), s2 = std::sinh(l2 / 2);
    long double u = (std::cosh(l3 / 2) + std::cosh((l1 - l2) / 2)) / (s1 * s2);
    return std::log1p(u + std::sqrt(u * (2 + u)));
}

// Starting from `start`, so that a walk begun at the centre never forms the large
// intermediate products of a walk begun at a corner.
std::array<Wide, 3> wide_frames(const double* l, Wide start = {}) {
    const long double pi = 3.141592653589793238462643383279502884L;
    const Wide quarter = Wide::rotation(pi / 2);
    std::array<Wide, 3> out;
    Wide f = start;
    // Walk the right-angled hexagon counterclockwise: half-boundary, seam, half-boundary, ...
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        out[i] = f * Wide::translation(0.5L * l[i]);
        f = out[i] * quarter * Wide::translation(wide_perp(l[i], l[j], l[k])) * quarter;
    }
    return out;
}

// F T(l) F^-1 as cosh(l/2) I + sinh(l/2) M with M = F diag(1,-1) F^-1 forced to be an
// exact reflection (trace 0, det -1), so the trace stays exact for tiny l.
Wide wide_conjugated_translation(const Wide& f, long double l) {
    const Wide fi = f.inverse();
    long double p = f.a * fi.a - f.b * fi.c;
    long double q = f.a * fi.b - f.b * fi.d;
    long double r = f.c * fi.a - f.d * fi.c;
    long double s = f.c * fi.b - f.d * fi.d;
    p = 0.5L * (p - s);
    long double n = std::sqrt(p * p + q * r);
    p /= n, q /= n, r /= n;
    long double ch = std::cosh(0.5L * l), sh = std::sinh(0.5L * l);
    return {ch + sh * p, sh * q, sh * r, ch - sh * p};
}

}  // namespace

std::array<Isometry, 3> pants_boundary_frames(double l0, double l1, double l2) {
    const double l[3] = {l0, l1, l2};
    auto w = wide_frames(l);
    return {w[0].narrow(), w[1].narrow(), w[2].narrow()};
}

Isometry Holonomy::image(const Word& w) const {
    Isometry m = Isometry::identity();
    for (int letter : w) {
        const Isometry& g = gens[std::abs(letter) - 1];
        m = m * (letter > 0 ? g : g.inverse());
    }
    return m;
}

std::vector<std::string> Holonomy::generator_names() const {
    std::vector<std::string> names;
    for (int e = 0; e < graph.num_edges(); ++e) names.push_back("x" + std::to_string(e));
    for (int f : nontree) names.push_back("t" + std::to_string(f));
    return names;
}

Word inverse_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}

Word reduce_word(const Word& w) {
    Word r;
    for (int x : w) {
        if (!r.empty() && r.back() == -x)
            r.pop_back();
        else
            r.push_back(x);
    }
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return reduce_word(r);
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
    std::string s;
    for (int x : w) {
        if (!s.empty()) s += ' ';
        s += names[std::abs(x) - 1];
        if (x < 0) s += '^';
    }
    return s;
}

namespace {

// Whether removing edge e disconnects the graph.
bool is_bridge(const PantsGraph& g, int e) {
    const auto& ed = g.edges[e];
    if (ed.a.pants == ed.b.pants) return false;
    std::vector<bool> seen(g.num_pants(), false);
    std::deque<int> queue{ed.a.pants};
    seen[ed.a.pants] = true;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (int i = 0; i < g.num_edges(); ++i) {
            if (i == e) continue;
            const auto& x = g.edges[i];
            for (auto [u, v] : {std::pair{x.a.pants, x.b.pants}, std::pair{x.b.pants, x.a.pants}})
                if (u == p && !seen[v]) seen[v] = true, queue.push_back(v);
        }
    }
    return !seen[ed.b.pants];
}

double distance_to_line(const Isometry& frame, double x, double y) {
    Isometry fi = frame.inverse();
    double px = fi.a * x + fi.b, py = fi.a * y;  // numerator of fi(z)
    double qx = fi.c * x + fi.d, qy = fi.c * y;  // denominator
    double den = qx * qx + qy * qy;
    double re = (px * qx + py * qy) / den, im = (py * qx - px * qy) / den;
    return std::asinh(std::fabs(re) / im);
}

Isometry conjugated_translation(const Wide& f, double l) { return wide_conjugated_translation(f, l).narrow(); }

// Point of the hexagon balancing its distances to the three boundary lines.
Wide centre_frame(const std::array<Isometry, 3>& frames) {
    auto cost = [&](double x, double ly) {
        double y = std::exp(ly), c = 0;
        for (const auto& f : frames) {
            double d = distance_to_line(f, x, y);
            c += d * d;
        }
        return c;
    };
    // Start at frames[0](i) in (x, log y) coordinates.
    const auto& f0 = frames[0];
    double den0 = f0.d * f0.d + f0.c * f0.c;
    double px = (f0.b * f0.d + f0.a * f0.c) / den0, py = std::log(1.0 / den0);
    double step = 1.0, best = cost(px, py);
    while (step > 1e-9) {
        bool moved = false;
        for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
            double y = std::exp(py);
            double nx = px + step * dx * y, ny = py + step * dy;
            double c = cost(nx, ny);
            if (c < best) best = c, px = nx, py = ny, moved = true;
        }
        if (!moved) step *= 0.5;
    }
    long double sy = std::exp(0.5L * py);
    return {sy, px / sy, 0, 1 / sy};
}

GroupoidPath reduce_path(const GroupoidPath& p) {
    GroupoidPath r;
    for (const auto& s : p) {
        if (!r.empty() && r.back() == s.inverse())
            r.pop_back();
        else
            r.push_back(s);
    }
    return r;
}

}  // namespace

GroupoidPath Holonomy::cyclic_path(const Word& w) const {
    GroupoidPath p;
    auto append = [&](const GroupoidPath& q, bool reversed) {
        if (!reversed) {
            p.insert(p.end(), q.begin(), q.end());
        } else {
            for (auto it = q.rbegin(); it != q.rend(); ++it) p.push_back(it->inverse());
        }
    };
    const int E = graph.num_edges();
    for (int letter : w) {
        int k = std::abs(letter) - 1;
        GroupoidPath piece;
        if (k < E) {
            const auto& ed = graph.edges[k];
            piece = tree_path[ed.a.pants];
            piece.push_back({PathStep::Loop, ed.a.pants * 3 + ed.a.slot, 1});
            for (auto it = tree_path[ed.a.pants].rbegin(); it != tree_path[ed.a.pants].rend(); ++it)
                piece.push_back(it->inverse());
        } else {
            int f = nontree[k - E];
            const auto& ed = graph.edges[f];
            piece = tree_path[ed.a.pants];
            piece.push_back({PathStep::Cross, f, 1});
            for (auto it = tree_path[ed.b.pants].rbegin(); it != tree_path[ed.b.pants].rend(); ++it)
                piece.push_back(it->inverse());
        }
        append(piece, letter < 0);
    }
    p = reduce_path(p);
    std::size_t lo = 0, hi = p.size();
    while (hi - lo >= 2 && p[lo] == p[hi - 1].inverse()) ++lo, --hi;
    return GroupoidPath(p.begin() + lo, p.begin() + hi);
}

Isometry Holonomy::path_image(const GroupoidPath& p) const {
    Isometry m = Isometry::identity();
    for (const auto& s : p) {
        if (s.kind == PathStep::Cross) {
            m = m * (s.sign > 0 ? local_glue[s.id] : local_glue[s.id].inverse());
        } else {
            const Isometry& c = local_boundary[s.id / 3][s.id % 3];
            m = m * (s.sign > 0 ? c : c.inverse());
        }
    }
    return m;
}

namespace {

// The fat reference depends only on the graph; built once per graph and shared.
std::shared_ptr<const Holonomy> reference_for(const PantsGraph& g) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::shared_ptr<const Holonomy>> cache;
    std::vector<int> key{g.genus};
    for (const auto& e : g.edges) key.insert(key.end(), {e.a.pants, e.a.slot, e.b.pants, e.b.slot});
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const int E = g.num_edges();
    // Slightly irregular so that no two curves meet on a pants curve by symmetry.
    FNCoordinates fat;
    for (int e = 0; e < E; ++e) {
        fat.lengths.push_back(kReferenceLength + 0.05 * e);
        fat.twists.push_back(0.1 + 0.03 * e);
    }
    auto ref = std::make_shared<const Holonomy>(build_holonomy(g, fat, false));
    cache.emplace(key, ref);
    return ref;
}

}  // namespace

Holonomy build_holonomy(const PantsGraph& g, const FNCoordinates& x, bool with_reference) {
    g.validate();
    x.validate(g);
    Holonomy h;
    h.graph = g;
    h.coords = x;
    const int P = g.num_pants(), E = g.num_edges();

    std::vector<std::array<Wide, 3>> frames(P);
    h.local_boundary.assign(P, {});
    for (int p = 0; p < P; ++p) {
        double l[3];
        for (int s = 0; s < 3; ++s) l[s] = x.lengths[g.edge_at(p, s)];
        auto corner = wide_frames(l);
        Wide ci = centre_frame({corner[0].narrow(), corner[1].narrow(), corner[2].narrow()}).inverse();
        frames[p] = wide_frames(l, ci);
        for (int s = 0; s < 3; ++s) h.local_boundary[p][s] = conjugated_translation(frames[p][s], l[s]);
    }
    h.local_glue.resize(E);
    // Half-turn about i: reverses the imaginary axis and swaps its sides.
    const Wide flip{0, -1, 1, 0};
    for (int e = 0; e < E; ++e) {
        const auto& ed = g.edges[e];
        long double shift = static_cast<long double>(x.twists[e]) * x.lengths[e];
        h.local_glue[e] = (frames[ed.a.pants][ed.a.slot] * Wide::translation(shift) * flip *
                           frames[ed.b.pants][ed.b.slot].inverse())
                              .narrow();
    }

    // Breadth-first spanning tree from pants 0, edges scanned in index order.
    h.pants_frame.assign(P, Isometry::identity());
    h.tree_path.assign(P, {});
    std::vector<bool> reached(P, false), tree(E, false);
    reached[0] = true;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (int e = 0; e < E; ++e) {
            const auto& ed = g.edges[e];
            if (ed.a.pants == p && !reached[ed.b.pants]) {
                h.pants_frame[ed.b.pants] = h.pants_frame[p] * h.local_glue[e];
                h.tree_path[ed.b.pants] = h.tree_path[p];
                h.tree_path[ed.b.pants].push_back({PathStep::Cross, e, 1});
                reached[ed.b.pants] = tree[e] = true;
                queue.push_back(ed.b.pants);
            } else if (ed.b.pants == p && !reached[ed.a.pants]) {
                h.pants_frame[ed.a.pants] = h.pants_frame[p] * h.local_glue[e].inverse();
                h.tree_path[ed.a.pants] = h.tree_path[p];
                h.tree_path[ed.a.pants].push_back({PathStep::Cross, e, -1});
                reached[ed.a.pants] = tree[e] = true;
                queue.push_back(ed.a.pants);
            }
        }
    }

    h.stable_of_edge.assign(E, -1);
    for (int e = 0; e < E; ++e) {
        const auto& ed = g.edges[e];
        const Isometry& m = h.pants_frame[ed.a.pants];
        h.gens.push_back(m * h.local_boundary[ed.a.pants][ed.a.slot] * m.inverse());
    }
    for (int e = 0; e < E; ++e) {
        if (tree[e]) continue;
        const auto& ed = g.edges[e];
        h.stable_of_edge[e] = static_cast<int>(h.gens.size());
        h.nontree.push_back(e);
        h.gens.push_back(h.pants_frame[ed.a.pants] * h.local_glue[e] * h.pants_frame[ed.b.pants].inverse());
    }

    h.slot_words.assign(P, {});
    for (int e = 0; e < E; ++e) {
        const auto& ed = g.edges[e];
        h.slot_words[ed.a.pants][ed.a.slot] = {e + 1};
        if (tree[e]) {
            h.slot_words[ed.b.pants][ed.b.slot] = {-(e + 1)};
        } else {
            int t = h.stable_of_edge[e] + 1;
            h.slot_words[ed.b.pants][ed.b.slot] = {-t, -(e + 1), t};
        }
        h.pants_loops.push_back({e + 1});
    }
    h.separating_edge.assign(E, false);
    for (int e = 0; e < E; ++e) h.separating_edge[e] = is_bridge(g, e);

    for (int e = 0; e < E; ++e) {
        double rec = word_length(h, h.pants_loops[e]);
        if (std::fabs(rec - x.lengths[e]) > 1e-8 * x.lengths[e])
            throw ValidationFailed("pants curve " + std::to_string(e) + " length not recovered");
    }

    if (with_reference) {
        h.reference = reference_for(g);
        h.dual_loops = h.reference->dual_loops;
        return h;
    }

    // Dual loops, chosen once on the fat metric: among short words crossing e once
    // (twice when e separates), the fewest total crossings, then the shortest.
    std::vector<Word> ball;
    const int n = h.num_generators();
    Word w;
    auto grow = [&](auto&& self) -> void {
        if (!w.empty() && w.front() != -w.back()) ball.push_back(w);
        if (w.size() == 4) return;
        for (int k = 1; k <= n; ++k)
            for (int letter : {k, -k}) {
                if (!w.empty() && w.back() == -letter) continue;
                w.push_back(letter);
                self(self);
                w.pop_back();
            }
    };
    grow(grow);
    h.dual_loops.assign(E, {});
    std::vector<std::tuple<int, double>> best(E, {0, 0.0});
    for (const auto& c : ball) {
        auto ec = edge_crossings(h, c);
        int total = 0;
        for (int k : ec) total += k;
        for (int e = 0; e < E; ++e) {
            if (ec[e] != (h.separating_edge[e] ? 2 : 1)) continue;
            double l = word_length(h, c);
            std::tuple<int, double> key{total, l};
            bool better = h.dual_loops[e].empty() || std::get<0>(key) < std::get<0>(best[e]) ||
                          (std::get<0>(key) == std::get<0>(best[e]) && l < std::get<1>(best[e]) - 1e-12);
            if (better) best[e] = key, h.dual_loops[e] = c;
        }
    }
    for (int e = 0; e < E; ++e)
        if (h.dual_loops[e].empty()) throw ValidationFailed("no dual loop for edge " + std::to_string(e));
    return h;
}

namespace {

// Local words live in the free group on C0 (letter 1) and C1 (letter 2) of one pants;
// C2 = C0^-1 C1^-1 in PSL(2,R).
using LocalWord = std::vector<int>;

void push_local(LocalWord& w, int x) {
    if (!w.empty() && w.back() == -x)
        w.pop_back();
    else
        w.push_back(x);
}

void append_slot_power(LocalWord& w, int slot, int k) {
    for (int r = 0; r < std::abs(k); ++r) {
        int s = k > 0 ? 1 : -1;
        if (slot < 2) {
            push_local(w, s * (slot + 1));
        } else if (s > 0) {
            push_local(w, -1), push_local(w, -2);
        } else {
            push_local(w, 2), push_local(w, 1);
        }
    }
}

// k with w == C_slot^k exactly, if any.
std::optional<int> slot_power(const LocalWord& w, int slot) {
    if (w.empty()) return 0;
    int len = static_cast<int>(w.size());
    int k = slot < 2 ? len : len / 2;
    if (slot == 2 && len % 2) return std::nullopt;
    for (int sgn : {1, -1}) {
        LocalWord probe;
        append_slot_power(probe, slot, sgn * k);
        if (probe == w) return sgn * k;
    }
    return std::nullopt;
}

void cyclic_reduce(LocalWord& w) {
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) ++lo, --hi;
    w = LocalWord(w.begin() + lo, w.begin() + hi);
}

CyclicForm form_of_path(const Holonomy& h, const GroupoidPath& path) {
    CyclicForm f;
    int cur = 0;
    LocalWord seg;
    for (const auto& s : path) {
        if (s.kind == PathStep::Loop) {
            append_slot_power(seg, s.id % 3, s.sign);
            cur = s.id / 3;
        } else {
            f.pants.push_back(departure(h.graph, s).pants);
            f.local.push_back(seg);
            f.cross.push_back(s);
            seg.clear();
            cur = arrival(h.graph, s).pants;
        }
    }
    if (f.cross.empty()) {
        f.pants.push_back(cur);
        f.local.push_back(seg);
        cyclic_reduce(f.local[0]);
        return f;
    }
    // Close the cycle: the trailing segment precedes the first one.
    LocalWord merged = seg;
    for (int x : f.local[0]) push_local(merged, x);
    f.local[0] = merged;
    // Britton reduction: cross e, C^k at the arrival slot, cross back.
    bool changed = true;
    while (changed && !f.cross.empty()) {
        changed = false;
        const int m = static_cast<int>(f.cross.size());
        for (int i = 0; i < m; ++i) {
            int prev = (i + m - 1) % m;
            if (!(f.cross[i] == f.cross[prev].inverse())) continue;
            auto k = slot_power(f.local[i], arrival(h.graph, f.cross[prev]).slot);
            if (!k) continue;
            int back_slot = departure(h.graph, f.cross[prev]).slot;
            LocalWord w = f.local[prev];
            append_slot_power(w, back_slot, -*k);
            if (m > 2) {
                int next = (i + 1) % m;
                for (int x : f.local[next]) push_local(w, x);
                f.local[prev] = w;
                f.cross[prev] = f.cross[next];
                // Drop segments i and next, crossings i and (old) prev slot reused.
                std::vector<int> drop = {i, next};
                std::sort(drop.rbegin(), drop.rend());
                for (int d : drop) {
                    f.pants.erase(f.pants.begin() + d);
                    f.local.erase(f.local.begin() + d);
                    f.cross.erase(f.cross.begin() + d);
                }
            } else {
                f.pants = {f.pants[prev]};
                f.local = {w};
                f.cross.clear();
            }
            changed = true;
            break;
        }
    }
    if (f.cross.empty()) {
        cyclic_reduce(f.local[0]);
    }
    return f;
}

// Rotations of w, any of which is a slot power when w is.
std::optional<SlotPower> rotated_slot_power(int pants, const LocalWord& w) {
    for (int slot = 0; slot < 3; ++slot)
        for (std::size_t r = 0; r < w.size(); ++r) {
            LocalWord rot(w.begin() + r, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + r);
            if (auto k = slot_power(rot, slot); k && *k != 0) return SlotPower{pants, slot, *k};
        }
    return std::nullopt;
}

}  // namespace

SlotRef departure(const PantsGraph& g, const PathStep& x) {
    const auto& ed = g.edges[x.id];
    return x.sign > 0 ? ed.a : ed.b;
}

SlotRef arrival(const PantsGraph& g, const PathStep& x) {
    const auto& ed = g.edges[x.id];
    return x.sign > 0 ? ed.b : ed.a;
}

CyclicForm cyclic_form(const Holonomy& h, const Word& w) { return form_of_path(h, h.cyclic_path(w)); }

std::optional<SlotPower> as_slot_power(const CyclicForm& f) {
    if (!f.cross.empty() || f.local[0].empty()) return std::nullopt;
    return rotated_slot_power(f.pants[0], f.local[0]);
}

Isometry local_image(const Holonomy& h, int pants, const LocalWord& w) {
    Isometry m = Isometry::identity();
    for (int x : w) {
        const Isometry& c = h.local_boundary[pants][std::abs(x) - 1];
        m = m * (x > 0 ? c : c.inverse());
    }
    return m;
}

Isometry crossing_image(const Holonomy& h, const PathStep& x) {
    return x.sign > 0 ? h.local_glue[x.id] : h.local_glue[x.id].inverse();
}

namespace {

// Trace of a cyclic normal form, or the exact length for boundary powers.
double cyclic_length(const Holonomy& h, const CyclicForm& f) {
    if (f.cross.empty()) {
        if (f.local[0].empty()) throw NotHyperbolic("word is trivial");
        if (auto sp = as_slot_power(f))
            return std::abs(sp->power) * h.coords.lengths[h.graph.edge_at(sp->pants, sp->slot)];
        return trace_to_length(local_image(h, f.pants[0], f.local[0]).trace());
    }
    Isometry m = Isometry::identity();
    for (std::size_t i = 0; i < f.cross.size(); ++i)
        m = m * local_image(h, f.pants[i], f.local[i]) * crossing_image(h, f.cross[i]);
    return trace_to_length(m.trace());
}

}  // namespace

double word_length(const Holonomy& h, const Word& w) {
    if (w.empty()) throw NotHyperbolic("empty word");
    return cyclic_length(h, cyclic_form(h, w));
}

int crossing_count(const Holonomy& h, const Word& w) {
    if (w.empty()) return 0;
    return static_cast<int>(cyclic_form(h, w).cross.size());
}

std::vector<int> edge_crossings(const Holonomy& h, const Word& w) {
    std::vector<int> out(h.graph.num_edges(), 0);
    if (w.empty()) return out;
    for (const auto& x : cyclic_form(h, w).cross) ++out[x.id];
    return out;
}

namespace {

// Rounding scale of det or trace for a matrix with these entries.
double rounding(const Isometry& m) {
    double n = std::max({std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
    return 16 * std::numeric_limits<double>::epsilon() * n * n;
}

}  // namespace

HolonomyReport validate(const Holonomy& h, int max_word_length) {
    HolonomyReport rep;
    auto check_det = [&](const Isometry& m, const std::string& what) {
        double det = m.det();
        if (std::fabs(det - 1.0) > 1e-9 + rounding(m)) rep.defects.push_back(what + ": determinant " + std::to_string(det));
    };
    for (int p = 0; p < h.graph.num_pants(); ++p)
        for (int s = 0; s < 3; ++s) check_det(h.local_boundary[p][s], "pants " + std::to_string(p) + " slot " + std::to_string(s));
    for (int e = 0; e < h.graph.num_edges(); ++e) check_det(h.local_glue[e], "gluing " + std::to_string(e));
    for (int e = 0; e < h.graph.num_edges(); ++e) {
        const auto& ed = h.graph.edges[e];
        double tr = h.local_boundary[ed.a.pants][ed.a.slot].trace();
        double l = h.coords.lengths[e];
        double rec = std::fabs(tr) > 2.0 ? trace_to_length(tr) : 0.0;
        // Trace error of a conjugated translation, propagated through the inverse of cosh.
        double slack = rounding(h.local_boundary[ed.a.pants][ed.a.slot]) / std::sinh(0.5 * l);
        if (std::fabs(rec - l) > 1e-8 * l + slack)
            rep.defects.push_back("pants curve " + std::to_string(e) + ": trace recovers " + std::to_string(rec));
    }
    // Every freely reduced word up to the given length is hyperbolic or a relator.
    const int n = h.num_generators();
    const auto names = h.generator_names();
    Word w;
    int flagged = 0;
    auto visit = [&](auto&& self) -> void {
        if (!w.empty()) {
            CyclicForm f = cyclic_form(h, w);
            bool trivial = f.cross.empty() && f.local[0].empty();
            if (!trivial) {
                double len = 0;
                try {
                    len = cyclic_length(h, f);
                } catch (const NotHyperbolic&) {
                }
                // Relators reduce to the empty form; anything else must translate.
                if (!(len > 0)) {
                    if (flagged++ < 20) rep.defects.push_back("word " + word_to_string(w, names) + " is not hyperbolic");
                }
            }
        }
        if (static_cast<int>(w.size()) == max_word_length) return;
        for (int k = 1; k <= n; ++k) {
            for (int letter : {k, -k}) {
                if (!w.empty() && w.back() == -letter) continue;
                w.push_back(letter);
                self(self);
                w.pop_back();
            }
        }
    };
    visit(visit);
    return rep;
}

namespace presets {

PantsGraph genus2_theta() {
    PantsGraph g;
    g.genus = 2;
    for (int k = 0; k < 3; ++k) g.edges.push_back({{0, k}, {1, k}});
    return g;
}

PantsGraph genus2_dumbbell() {
    PantsGraph g;
    g.genus = 2;
    g.edges = {{{0, 0}, {0, 1}}, {{0, 2}, {1, 2}}, {{1, 0}, {1, 1}}};
    return g;
}

PantsGraph fig5() {
    // Pants 0,1 sit at the top and bottom of the wall between the first two handles,
    // pants 2,3 at the top and bottom of the wall between the last two.
    PantsGraph g;
    g.genus = 3;
    g.edges = {
        {{0, 0}, {1, 0}},  // gamma_1
        {{0, 1}, {1, 1}},  // gamma_2
        {{0, 2}, {2, 0}},  // gamma_3
        {{1, 2}, {3, 0}},  // gamma_4
        {{2, 1}, {3, 1}},  // gamma_5
        {{2, 2}, {3, 2}},  // gamma_6
    };
    return g;
}

PantsGraph fig5_prime() {
    PantsGraph g;
    g.genus = 3;
    g.edges = {
        {{0, 0}, {0, 1}},  // gamma_1, inside the one-holed torus cut off by gamma_2'
        {{0, 2}, {1, 0}},  // gamma_2'
        {{1, 1}, {2, 0}},  // gamma_3
        {{1, 2}, {3, 0}},  // gamma_4
        {{2, 1}, {3, 1}},  // gamma_5
        {{2, 2}, {3, 2}},  // gamma_6
    };
    return g;
}

FNCoordinates example1(int n, double delta) {
    FNCoordinates x;
    x.lengths.assign(6, 1.0 / n);
    x.lengths[0] = std::pow(static_cast<double>(n), -delta);
    x.twists.assign(6, 0.0);
    return x;
}

FNCoordinates example63(int n) {
    FNCoordinates x;
    x.lengths.assign(6, 1.0 / n);
    x.lengths[0] = std::pow(static_cast<double>(n), -(1.0 - 1.0 / n));
    x.twists.assign(6, 0.0);
    return x;
}

}  // namespace presets

std::uint64_t surface_hash(const PantsGraph& g, const FNCoordinates& x) {
    // FNV-1a over the exact bit patterns.
    std::uint64_t hsh = 1469598103934665603ull;
    auto mix = [&](const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) hsh = (hsh ^ c[i]) * 1099511628211ull;
    };
    mix(&g.genus, sizeof g.genus);
    for (const auto& e : g.edges) {
        int v[4] = {e.a.pants, e.a.slot, e.b.pants, e.b.slot};
        mix(v, sizeof v);
    }
    for (double d : x.lengths) mix(&d, sizeof d);
    for (double d : x.twists) mix(&d, sizeof d);
    return hsh;
}

}  // namespace hypk
