#include "hypk/curves.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"
#include "hypk/parallel.hpp"

namespace hypk {

Word cyclically_reduced(const Word& w) {
    Word r = reduce_word(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) ++lo, --hi;
    return Word(r.begin() + lo, r.begin() + hi);
}

Word canonical_rotation(const Word& w) {
    Word r = cyclically_reduced(w);
    Word best = r;
    for (std::size_t k = 1; k < r.size(); ++k) {
        Word rot(r.begin() + k, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + k);
        if (rot < best) best = std::move(rot);
    }
    return best;
}

bool is_proper_power(const Word& w) {
    Word r = cyclically_reduced(w);
    const std::size_t n = r.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = r[i] == r[i - p];
        if (periodic) return true;
    }
    return false;
}

namespace {

std::vector<int> graph_key(const PantsGraph& g) {
    std::vector<int> key{g.genus};
    for (const auto& e : g.edges) key.insert(key.end(), {e.a.pants, e.a.slot, e.b.pants, e.b.slot});
    return key;
}

// Closed walk pants 0 -> a(f) -> across f -> b(f) -> pants 0; entry e is the signed
// number of passes across edge e from side a to side b.
std::vector<int> cycle_vector(const Holonomy& h, int f) {
    const auto& ed = h.graph.edges[f];
    std::vector<int> c(h.graph.num_edges(), 0);
    for (const auto& s : h.tree_path[ed.a.pants]) c[s.id] += s.sign;
    c[f] += 1;
    for (const auto& s : h.tree_path[ed.b.pants]) c[s.id] -= s.sign;
    return c;
}

}  // namespace

HomologyClass abelianize(const Holonomy& h, const Word& w) {
    const int E = h.graph.num_edges();
    const int g = static_cast<int>(h.nontree.size());
    std::vector<int> xexp(E, 0), texp(h.num_generators() - E, 0);
    for (int letter : w) {
        int k = std::abs(letter) - 1, s = letter > 0 ? 1 : -1;
        if (k < E)
            xexp[k] += s;
        else
            texp[k - E] += s;
    }
    HomologyClass out(2 * g, 0);
    for (int i = 0; i < g; ++i) {
        auto c = cycle_vector(h, h.nontree[i]);
        for (int e = 0; e < E; ++e) out[i] += xexp[e] * c[e];
        out[g + i] = texp[i];
    }
    return out;
}

std::vector<Word> homology_basis_loops(const Holonomy& h) {
    std::vector<Word> out;
    for (int f : h.nontree) out.push_back({f + 1});
    for (int f : h.nontree) out.push_back({h.stable_of_edge[f] + 1});
    return out;
}

long long algebraic_int(const HomologyClass& a, const HomologyClass& b, const PairingMatrix& p) {
    long long s = 0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) s += static_cast<long long>(a[i]) * p.m[i][j] * b[j];
    return s;
}

long long integer_determinant(std::vector<std::vector<long long>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                __int128 v = static_cast<__int128>(m[i][j]) * m[k][k] - static_cast<__int128>(m[i][k]) * m[k][j];
                m[i][j] = static_cast<long long>(v / prev);
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

using Complex = std::complex<double>;

Complex apply_point(const Isometry& g, Complex z) { return (g.a * z + g.b) / (g.c * z + g.d); }

double distance_from_i(Complex p) {
    double dx = p.real(), dy = p.imag() - 1.0;
    return acosh1p((dx * dx + dy * dy) / (2.0 * p.imag()));
}

double displacement(const Isometry& g) {
    double s = g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d;
    return acosh1p(0.5 * s - 1.0);
}

// Pants-group elements moving i by at most `radius`, in the centred frame of one pants.
struct Ball {
    double radius = 0;
    std::vector<Isometry> elements;  // sorted by displacement; the identity first
    std::vector<double> displacement;
};

// Reduced words in C0, C1 whose prefixes stray at most this far beyond the radius.
// Checked against exhaustive enumeration on the reference metric.
constexpr double kPrefixSlack = 6.0;
constexpr double kMaxBallRadius = 26.0;

std::shared_ptr<const Ball> make_ball(const Holonomy& topo, int pants, double radius) {
    const Isometry gen[4] = {topo.local_boundary[pants][0], topo.local_boundary[pants][0].inverse(),
                             topo.local_boundary[pants][1], topo.local_boundary[pants][1].inverse()};
    std::vector<std::pair<double, Isometry>> found{{0.0, Isometry::identity()}};
    struct Node {
        Isometry g;
        int last;
    };
    std::vector<Node> stack{{Isometry::identity(), -1}};
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        for (int k = 0; k < 4; ++k) {
            if (n.last >= 0 && (k ^ 1) == n.last) continue;
            Isometry m = n.g * gen[k];
            double d = displacement(m);
            if (d > radius + kPrefixSlack) continue;
            if (d <= radius) found.emplace_back(d, m);
            stack.push_back({m, k});
        }
    }
    std::stable_sort(found.begin() + 1, found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto ball = std::make_shared<Ball>();
    ball->radius = radius;
    for (const auto& [d, m] : found) ball->elements.push_back(m), ball->displacement.push_back(d);
    return ball;
}

std::shared_ptr<const Ball> ball_for(const Holonomy& topo, int pants, double radius) {
    if (radius > kMaxBallRadius)
        throw BallTooSmall("arcs need a lift ball of radius " + std::to_string(radius));
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const Ball>> cache;
    auto key = std::pair{surface_hash(topo.graph, topo.coords), pants};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end() && it->second->radius >= radius) return it->second;
    }
    // Grow in steps so that repeated requests reuse one ball.
    double r = std::min(kMaxBallRadius, std::ceil(radius / 4.0) * 4.0 + 4.0);
    auto ball = make_ball(topo, pants, r);
    std::lock_guard lock(mu);
    auto& slot = cache[key];
    if (!slot || slot->radius < ball->radius) slot = ball;
    return slot;
}

// Piece of a closed geodesic inside one pants, in that pants' centred frame: the
// part of the line through [ta, tb) in the parameter of to_axis, which sends the
// line to the upward imaginary axis with t = log y.
struct Arc {
    int pants = 0;
    Isometry to_axis;
    BoundaryPoint rep, att;
    double ta = 0, tb = 0;
    double radius = 0;  // the arc lies within this distance of i
};

struct Lift {
    std::vector<Arc> arcs;
    bool local = false;  // no crossings: one fundamental segment of a line in one pants
    std::optional<SlotPower> boundary;
    std::vector<PathStep> cross;
};

double point_radius(const Isometry& from_axis, double t) {
    return distance_from_i(apply_point(from_axis, Complex(0.0, std::exp(t))));
}

// Parameter where the line through (r, s) meets the axis; the two must separate 0 and inf.
double meet(const Isometry& to_axis, const Axis& line) {
    BoundaryPoint r = apply(to_axis, line.repelling), s = apply(to_axis, line.attracting);
    if (!(r.p * r.q * s.p * s.q < 0)) throw NumericallyAmbiguous("arc does not meet its boundary line");
    return 0.5 * (std::log(std::fabs(r.p * s.p)) - std::log(std::fabs(r.q * s.q)));
}

// Moves the arc by a pants-group element towards i, greedily over the generators, so
// that the lift ball needed against it only depends on the arc's own length.
void recentre(const Holonomy& topo, Arc& a) {
    const Isometry gen[4] = {topo.local_boundary[a.pants][0], topo.local_boundary[a.pants][0].inverse(),
                             topo.local_boundary[a.pants][1], topo.local_boundary[a.pants][1].inverse()};
    const Isometry from = a.to_axis.inverse();
    const Complex mid = apply_point(from, Complex(0.0, std::exp(0.5 * (a.ta + a.tb))));
    Isometry h = Isometry::identity();
    double best = distance_from_i(mid);
    for (bool moved = true; moved;) {
        moved = false;
        int pick = -1;
        Isometry next;
        for (int k = 0; k < 4; ++k) {
            Isometry c = h * gen[k];
            double d = distance_from_i(apply_point(c.inverse(), mid));
            if (d < best - 1e-9) best = d, pick = k, next = c;
        }
        if (pick >= 0) h = next, moved = true;
    }
    if (h.a == 1 && h.b == 0 && h.c == 0 && h.d == 1) return;
    // The arc h^-1 a keeps its parameters: to_axis h sends it onto the same segment.
    a.to_axis = a.to_axis * h;
    const Isometry hi = h.inverse();
    a.rep = apply(hi, a.rep);
    a.att = apply(hi, a.att);
    const Isometry f = a.to_axis.inverse();
    a.radius = std::max(point_radius(f, a.ta), point_radius(f, a.tb));
}

Lift lift_of(const Holonomy& topo, const Word& w) {
    CyclicForm f = cyclic_form(topo, w);
    Lift out;
    out.cross = f.cross;
    if (f.cross.empty() && f.local[0].empty()) throw NotHyperbolic("trivial class");
    if ((out.boundary = as_slot_power(f))) return out;
    auto make_arc = [&](int pants, const Isometry& m) {
        Arc a;
        a.pants = pants;
        Axis ax = axis(m);
        Isometry from = frame_of(ax);
        a.to_axis = from.inverse();
        a.rep = ax.repelling;
        a.att = ax.attracting;
        return std::pair{a, from};
    };
    if (f.cross.empty()) {
        out.local = true;
        Isometry s = local_image(topo, f.pants[0], f.local[0]);
        auto [a, from] = make_arc(f.pants[0], s);
        double l = s.translation_length();
        double t0 = std::log(std::abs(apply_point(a.to_axis, Complex(0.0, 1.0))));
        a.ta = t0 - 0.5 * l;
        a.tb = t0 + 0.5 * l;
        a.radius = std::max(point_radius(from, a.ta), point_radius(from, a.tb));
        recentre(topo, a);
        out.arcs.push_back(a);
        return out;
    }
    const std::size_t n = f.cross.size();
    std::vector<Isometry> seg(n);
    for (std::size_t i = 0; i < n; ++i) seg[i] = local_image(topo, f.pants[i], f.local[i]);
    for (std::size_t i = 0; i < n; ++i) {
        Isometry m = Isometry::identity();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t j = (i + k) % n;
            m = m * seg[j] * crossing_image(topo, f.cross[j]);
        }
        auto [a, from] = make_arc(f.pants[i], m);
        SlotRef in = arrival(topo.graph, f.cross[(i + n - 1) % n]);
        SlotRef out_slot = departure(topo.graph, f.cross[i]);
        a.ta = meet(a.to_axis, axis(topo.local_boundary[in.pants][in.slot]));
        a.tb = meet(a.to_axis, apply(seg[i], axis(topo.local_boundary[out_slot.pants][out_slot.slot])));
        if (!(a.ta < a.tb)) throw NumericallyAmbiguous("arc endpoints out of order");
        a.radius = std::max(point_radius(from, a.ta), point_radius(from, a.tb));
        recentre(topo, a);
        out.arcs.push_back(a);
    }
    return out;
}

// Crossings of boundary-power u with v, read off v's edge crossings.
std::vector<SignedCrossing> boundary_crossings(const Holonomy& topo, const SlotPower& u, const Lift& v) {
    int e = topo.graph.edge_at(u.pants, u.slot);
    if (v.boundary) {
        if (topo.graph.edge_at(v.boundary->pants, v.boundary->slot) == e)
            throw SharedGeodesic("both curves run along pants curve " + std::to_string(e));
        return {};
    }
    bool side_a = topo.graph.edges[e].a == SlotRef{u.pants, u.slot};
    int base = (u.power > 0 ? 1 : -1) * (side_a ? 1 : -1);
    std::vector<SignedCrossing> out;
    // A power of the pants curve meets each crossing once per turn.
    for (std::size_t i = 0; i < v.cross.size(); ++i)
        if (v.cross[i].id == e)
            for (int k = 0; k < std::abs(u.power); ++k) out.push_back({static_cast<double>(i), base * v.cross[i].sign});
    return out;
}

std::vector<SignedCrossing> lift_crossings(const Holonomy& topo, const Lift& u, const Lift& v, bool same) {
    if (u.boundary) return boundary_crossings(topo, *u.boundary, v);
    if (v.boundary) {
        auto r = boundary_crossings(topo, *v.boundary, u);
        for (auto& c : r) c.sign = -c.sign;
        return r;
    }
    std::vector<SignedCrossing> out;
    for (std::size_t i = 0; i < u.arcs.size(); ++i) {
        const Arc& ua = u.arcs[i];
        const double tmid = 0.5 * (ua.ta + ua.tb);
        // Endpoints this far out in the scaled frame coincide with the axis' own.
        const double far = 20.7 + 0.5 * (ua.tb - ua.ta);
        std::vector<SignedCrossing> hits;
        for (std::size_t j = 0; j < v.arcs.size(); ++j) {
            const Arc& va = v.arcs[j];
            if (va.pants != ua.pants) continue;
            double reach = ua.radius + va.radius;
            auto ball = ball_for(topo, ua.pants, reach);
            for (std::size_t k = 0; k < ball->elements.size() && ball->displacement[k] <= reach; ++k) {
                if (same && !u.local && i == j && k == 0) continue;
                Isometry g = ua.to_axis * ball->elements[k];
                BoundaryPoint r = apply(g, va.rep), s = apply(g, va.att);
                double lr = std::log(std::fabs(r.p)) - std::log(std::fabs(r.q)) - tmid;
                double ls = std::log(std::fabs(s.p)) - std::log(std::fabs(s.q)) - tmid;
                if ((lr < -far && ls > far) || (lr > far && ls < -far)) {
                    if (same) continue;
                    throw SharedGeodesic("curves share a geodesic");
                }
                double sr = r.p * r.q, ss = s.p * s.q;
                if (!(sr * ss < 0)) continue;
                double t = tmid + 0.5 * (lr + ls);
                // Points on a pants curve belong to the arc that starts there; genus-2
                // symmetry forces such points, so both ends are snapped.
                double tol = 1e-9 * std::max(1.0, std::fabs(t));
                if (t < ua.ta - tol || t >= ua.tb - tol) continue;
                // A closed line in the pants carries one period of v; keep the points of
                // that period so each lift of the curve is met once.
                if (v.local) {
                    Complex q = apply_point(va.to_axis * ball->elements[k].inverse() * ua.to_axis.inverse(),
                                            Complex(0.0, std::exp(t)));
                    double sv = std::log(std::abs(q));
                    double tolv = 1e-9 * std::max(1.0, std::fabs(sv));
                    if (sv < va.ta - tolv || sv >= va.tb - tolv) continue;
                }
                hits.push_back({t, sr < 0 ? +1 : -1});
            }
        }
        std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
        out.insert(out.end(), hits.begin(), hits.end());
    }
    return out;
}

struct TopologyMemo {
    std::mutex mu;
    std::map<std::pair<std::vector<int>, Word>, int> self_int;
    std::map<std::vector<int>, PairingMatrix> pairing;
};

TopologyMemo& memo() {
    static TopologyMemo m;
    return m;
}

}  // namespace

std::vector<SignedCrossing> geometric_int_signed(const Holonomy& h, const Word& u, const Word& v) {
    const Holonomy& topo = h.topology();
    return lift_crossings(topo, lift_of(topo, u), lift_of(topo, v), false);
}

int geometric_int(const Holonomy& h, const Word& u, const Word& v) {
    return static_cast<int>(geometric_int_signed(h, u, v).size());
}

int signed_int(const Holonomy& h, const Word& u, const Word& v) {
    int s = 0;
    for (const auto& c : geometric_int_signed(h, u, v)) s += c.sign;
    return s;
}

bool is_primitive(const Holonomy& h, const Word& w) {
    const Holonomy& topo = h.topology();
    CyclicForm f = cyclic_form(topo, w);
    if (f.cross.empty() && f.local[0].empty()) throw NotHyperbolic("trivial class");
    if (auto sp = as_slot_power(f)) return std::abs(sp->power) == 1;
    // Pants groups are free on C0, C1, where periodicity decides.
    if (f.cross.empty()) return !is_proper_power(f.local[0]);
    const std::size_t n = f.cross.size();
    std::vector<Isometry> step(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = local_image(topo, f.pants[i], f.local[i]) * crossing_image(topo, f.cross[i]);
    Isometry m = Isometry::identity();
    for (const auto& s : step) m = m * s;
    for (std::size_t k = 2; k <= n; ++k) {
        if (n % k) continue;
        const std::size_t p = n / k;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = f.cross[i] == f.cross[i - p];
        if (!periodic) continue;
        // The k-th root of m is in the group iff it differs from one period of the form
        // by a boundary power slid across the crossings.
        Isometry frame = frame_of(axis(m));
        Isometry root = frame * Isometry::translation(m.translation_length() / static_cast<double>(k)) * frame.inverse();
        Isometry cand = Isometry::identity();
        for (std::size_t i = 0; i < p; ++i) cand = cand * step[i];
        Isometry d = cand.inverse() * root;
        SlotRef in = arrival(topo.graph, f.cross[p - 1]);
        const Isometry& c = topo.local_boundary[in.pants][in.slot];
        double scale = std::fabs(d.a) + std::fabs(d.b) + std::fabs(d.c) + std::fabs(d.d);
        bool identity = std::fabs(std::fabs(d.trace()) - 2.0) < 1e-7 * scale * scale &&
                        std::fabs(d.b) + std::fabs(d.c) + std::fabs(std::fabs(d.a) - std::fabs(d.d)) < 1e-7 * scale;
        if (identity) return false;
        if (!d.is_hyperbolic() || elements_cross(c, d).kind != CrossKind::Shared) continue;
        double turns = d.translation_length() / c.translation_length();
        if (std::fabs(turns - std::round(turns)) < 1e-6) return false;
    }
    return true;
}

int self_int_count(const Holonomy& h, const Word& w) {
    Word a = canonical_rotation(w), b = canonical_rotation(inverse_word(w));
    auto key = std::pair{graph_key(h.graph), std::min(a, b)};
    {
        std::lock_guard lock(memo().mu);
        auto it = memo().self_int.find(key);
        if (it != memo().self_int.end()) return it->second;
    }
    if (!is_primitive(h, w)) throw SharedGeodesic("a proper power runs over its own geodesic");
    const Holonomy& topo = h.topology();
    Lift l = lift_of(topo, w);
    int count = 0;
    if (!l.boundary) {
        auto c = lift_crossings(topo, l, l, true);
        if (c.size() % 2) throw NumericallyAmbiguous("odd count of self-crossings");
        count = static_cast<int>(c.size() / 2);
    }
    std::lock_guard lock(memo().mu);
    memo().self_int.emplace(key, count);
    return count;
}

bool is_nonseparating(const Holonomy& h, const Word& w) {
    auto c = abelianize(h, w);
    return std::any_of(c.begin(), c.end(), [](int x) { return x != 0; });
}

PairingMatrix pairing_matrix(const Holonomy& h) {
    auto key = graph_key(h.graph);
    {
        std::lock_guard lock(memo().mu);
        auto it = memo().pairing.find(key);
        if (it != memo().pairing.end()) return it->second;
    }
    auto basis = homology_basis_loops(h);
    const int n = static_cast<int>(basis.size());
    PairingMatrix p{std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) p.m[i][j] = signed_int(h, basis[i], basis[j]);
    std::vector<std::vector<long long>> wide(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) wide[i][j] = p.m[i][j];
    long long det = integer_determinant(wide);
    if (det != 1 && det != -1) throw DegenerateBasis("pairing matrix determinant " + std::to_string(det));
    std::lock_guard lock(memo().mu);
    memo().pairing.emplace(key, p);
    return p;
}

int default_word_length(const PantsGraph& g) { return g.genus <= 2 ? 5 : 4; }

namespace {

// Generic metric on the same graph; separates classes the symmetric metrics confuse.
const Holonomy& generic_metric(const PantsGraph& g) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::unique_ptr<Holonomy>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[graph_key(g)];
    if (!slot) {
        FNCoordinates x;
        for (int e = 0; e < g.num_edges(); ++e) {
            x.lengths.push_back(1.3 + 0.17 * e);
            x.twists.push_back(0.13 + 0.07 * e);
        }
        slot = std::make_unique<Holonomy>(build_holonomy(g, x, false));
    }
    return *slot;
}

struct Candidate {
    Word word;
    double length = 0, generic = 0;
    HomologyClass homology;  // sign-normalized: first nonzero entry positive
    std::vector<int> crossings;
};

int word_budget(double cutoff, double min_translation) {
    if (!(cutoff > 0)) return 0;
    double w = std::ceil(cutoff / min_translation);
    return w > 1e9 ? 1000000000 : static_cast<int>(w);
}

}  // namespace

CurveTable enumerate_classes(const Holonomy& h, double cutoff, const EnumerationConfig& config) {
    CurveTable table;
    table.cutoff = cutoff;
    table.max_word_length = config.max_word_length > 0 ? config.max_word_length : default_word_length(h.graph);
    table.surface_hash = surface_hash(h.graph, h.coords);
    const int n = h.num_generators();
    table.min_translation = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n; ++k) table.min_translation = std::min(table.min_translation, word_length(h, {k}));
    table.word_budget = word_budget(cutoff, table.min_translation);
    table.certified = table.word_budget <= table.max_word_length;
    if (!(cutoff > 0)) return table;

    double nodes = 0, layer = 2.0 * n;
    for (int k = 1; k <= table.max_word_length; ++k, layer *= 2.0 * n - 1) nodes += layer;
    if (nodes > static_cast<double>(config.node_limit))
        throw BudgetExceeded("word ball of " + std::to_string(static_cast<long long>(nodes)) + " nodes");

    // One representative per unoriented cyclic word: canonical, primitive, and not
    // larger than the canonical form of its inverse.
    std::vector<Word> words;
    Word w;
    auto grow = [&](auto&& self) -> void {
        if (!w.empty() && w.front() != -w.back() && canonical_rotation(w) == w && !is_proper_power(w) &&
            w <= canonical_rotation(inverse_word(w)))
            words.push_back(w);
        if (static_cast<int>(w.size()) == table.max_word_length) return;
        for (int k = 1; k <= n; ++k)
            for (int letter : {k, -k}) {
                if (!w.empty() && w.back() == -letter) continue;
                w.push_back(letter);
                self(self);
                w.pop_back();
            }
    };
    grow(grow);

    const Holonomy& generic = generic_metric(h.graph);
    std::vector<std::optional<Candidate>> cand(words.size());
    parallel_for(words.size(), config.workers, [&](std::size_t i) {
        double l;
        try {
            l = word_length(h, words[i]);
        } catch (const NotHyperbolic&) {
            return;
        }
        if (!(l <= cutoff) || !is_primitive(h, words[i])) return;
        Candidate c;
        c.word = words[i];
        c.length = l;
        c.generic = word_length(generic, words[i]);
        c.homology = abelianize(h, words[i]);
        auto nz = std::find_if(c.homology.begin(), c.homology.end(), [](int x) { return x != 0; });
        if (nz != c.homology.end() && *nz < 0)
            for (int& x : c.homology) x = -x;
        c.crossings = edge_crossings(h, words[i]);
        cand[i] = std::move(c);
    });

    // Distinct words of one class agree on every invariant; keep the shortest word.
    std::vector<Candidate> pool;
    for (auto& c : cand)
        if (c) pool.push_back(std::move(*c));
    std::sort(pool.begin(), pool.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.generic, x.word) < std::tie(y.generic, y.word);
    });
    auto same_class = [](const Candidate& x, const Candidate& y) {
        return std::fabs(x.length - y.length) <= 1e-7 * std::max(1.0, x.length) && x.homology == y.homology &&
               x.crossings == y.crossings;
    };
    std::vector<char> taken(pool.size(), 0);
    std::vector<Candidate> classes;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (taken[i]) continue;
        std::size_t best = i;
        for (std::size_t j = i + 1; j < pool.size() && pool[j].generic - pool[i].generic <= 1e-7 * std::max(1.0, pool[i].generic); ++j) {
            if (taken[j] || !same_class(pool[i], pool[j])) continue;
            taken[j] = 1;
            const Word &bw = pool[best].word, &jw = pool[j].word;
            if (jw.size() < bw.size() || (jw.size() == bw.size() && jw < bw)) best = j;
        }
        classes.push_back(pool[best]);
    }
    std::sort(classes.begin(), classes.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.length, x.word) < std::tie(y.length, y.word);
    });

    std::vector<int> simple(classes.size());
    parallel_for(classes.size(), config.workers, [&](std::size_t i) { simple[i] = self_int_count(h, classes[i].word) == 0; });

    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        for (int orient : {1, -1}) {
            CurveEntry e;
            e.word = orient > 0 ? c.word : canonical_rotation(inverse_word(c.word));
            e.length = c.length;
            e.homology = abelianize(h, e.word);
            e.simple = simple[i] != 0;
            e.crossings = c.crossings;
            table.entries.push_back(std::move(e));
        }
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CurveEntry& x, const CurveEntry& y) { return std::tie(x.length, x.word) < std::tie(y.length, y.word); });
    return table;
}

CurveTable restrict_table(const CurveTable& t, double cutoff) {
    if (cutoff > t.cutoff) throw DomainError("cannot extend a curve table by restriction");
    CurveTable r = t;
    r.cutoff = cutoff;
    r.word_budget = word_budget(cutoff, t.min_translation);
    r.certified = r.word_budget <= r.max_word_length;
    r.entries.clear();
    for (const auto& e : t.entries)
        if (e.length <= cutoff) r.entries.push_back(e);
    return r;
}

namespace {

constexpr const char* kTableMagic = "hypk-curve-table";
constexpr int kTableVersion = 1;

std::string join(const std::vector<int>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<int> split(const std::string& s, int line) {
    std::vector<int> out;
    if (s == "-") return out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": bad integer list '" + s + "'");
        }
    }
    return out;
}

std::string real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void save_table(const CurveTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016" PRIx64, t.surface_hash);
    out << kTableMagic << ' ' << kTableVersion << '\n'
        << "surface_hash " << hash << '\n'
        << "cutoff " << real(t.cutoff) << '\n'
        << "max_word_length " << t.max_word_length << '\n'
        << "word_budget " << t.word_budget << '\n'
        << "certified " << (t.certified ? 1 : 0) << '\n'
        << "min_translation " << real(t.min_translation) << '\n'
        << "entries " << t.entries.size() << '\n';
    for (const auto& e : t.entries)
        out << join(e.word) << ' ' << real(e.length) << ' ' << join(e.homology) << ' ' << (e.simple ? 1 : 0) << ' '
            << join(e.crossings) << '\n';
    if (!out) throw ParseError("write failed for " + path);
}

CurveTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    CurveTable t;
    std::string line;
    int lineno = 0;
    auto next = [&](const std::string& key) {
        ++lineno;
        if (!std::getline(in, line)) throw ParseError("line " + std::to_string(lineno) + ": missing " + key);
        std::istringstream ls(line);
        std::string k, v;
        ls >> k >> v;
        if (k != key || v.empty()) throw ParseError("line " + std::to_string(lineno) + ": expected " + key);
        return v;
    };
    auto number = [&](const std::string& key) {
        std::string v = next(key);
        try {
            return std::stod(v);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad number for " + key);
        }
    };
    if (next(kTableMagic) != std::to_string(kTableVersion))
        throw ParseError("line 1: unsupported curve table version");
    t.surface_hash = std::stoull(next("surface_hash"), nullptr, 16);
    t.cutoff = number("cutoff");
    t.max_word_length = static_cast<int>(number("max_word_length"));
    t.word_budget = static_cast<int>(number("word_budget"));
    t.certified = number("certified") != 0;
    t.min_translation = number("min_translation");
    auto count = static_cast<std::size_t>(number("entries"));
    for (std::size_t i = 0; i < count; ++i) {
        ++lineno;
        if (!std::getline(in, line)) throw ParseError("line " + std::to_string(lineno) + ": missing entry");
        std::istringstream ls(line);
        std::string word, len, hom, simple, cr;
        if (!(ls >> word >> len >> hom >> simple >> cr))
            throw ParseError("line " + std::to_string(lineno) + ": entry needs five fields");
        CurveEntry e;
        e.word = split(word, lineno);
        try {
            e.length = std::stod(len);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad length");
        }
        e.homology = split(hom, lineno);
        e.simple = simple == "1";
        e.crossings = split(cr, lineno);
        t.entries.push_back(std::move(e));
    }
    return t;
}

}  // namespace hypk
