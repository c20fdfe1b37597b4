#include "hypk/moebius.hpp"

#include <cmath>
#include <numbers>

#include "hypk/errors.hpp"
#include "hypk/hyptrig.hpp"

namespace hypk {

Isometry Isometry::translation(double L) {
    double h = std::exp(0.5 * L);
    return {h, 0.0, 0.0, 1.0 / h};
}

Isometry Isometry::rotation(double phi) {
    double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
    return {c, s, -s, c};
}

bool Isometry::is_hyperbolic() const { return std::fabs(trace()) > 2.0; }

double Isometry::translation_length() const { return trace_to_length(trace()); }

Isometry compose(const Isometry& x, const Isometry& y) {
    Isometry r{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
               x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    double det = r.det();
    // Products of unit-determinant factors drift only by rounding; renormalize, but only
    // where a*d - b*c is itself accurate (large entries make it pure cancellation noise).
    double scale = std::fabs(r.a * r.d) + std::fabs(r.b * r.c);
    if (det > 0.0 && scale < 16.0 && std::fabs(det - 1.0) > 1e-15) {
        double s = 1.0 / std::sqrt(det);
        r.a *= s, r.b *= s, r.c *= s, r.d *= s;
    }
    return r;
}

Isometry normalized(const Isometry& m) {
    double det = m.det();
    if (!(det > 0.0)) throw DomainError("isometry with non-positive determinant");
    double s = 1.0 / std::sqrt(det);
    return {m.a * s, m.b * s, m.c * s, m.d * s};
}

double BoundaryPoint::angle() const {
    double t = 2.0 * std::atan2(p, q);
    if (t < 0) t += 2.0 * std::numbers::pi;
    if (t >= 2.0 * std::numbers::pi) t -= 2.0 * std::numbers::pi;
    return t;
}

BoundaryPoint apply(const Isometry& g, const BoundaryPoint& x) {
    double p = g.a * x.p + g.b * x.q, q = g.c * x.p + g.d * x.q;
    double n = std::hypot(p, q);
    return {p / n, q / n};
}

namespace {

BoundaryPoint eigen_direction(const Isometry& m, double lambda) {
    // Two expressions for the same eigenvector; keep the larger one.
    double p1 = m.b, q1 = lambda - m.a;
    double p2 = lambda - m.d, q2 = m.c;
    double n1 = std::hypot(p1, q1), n2 = std::hypot(p2, q2);
    if (n1 >= n2) return {p1 / n1, q1 / n1};
    return {p2 / n2, q2 / n2};
}

// b's endpoints expressed in a frame where a's axis is (0 -> inf).
Crossing classify_normalized(const BoundaryPoint& r, const BoundaryPoint& t) {
    double rn = std::fabs(r.p * t.q), rd = std::fabs(t.p * r.q);
    // Scale-free skew along a: near-asymptotic geodesics cannot be decided.
    if (rn == 0.0 || rd == 0.0 || rn < kAxisTolerance * rd || rd < kAxisTolerance * rn)
        throw NumericallyAmbiguous("axis endpoints within tolerance");
    double sr = r.p * r.q, st = t.p * t.q;
    if ((sr < 0) == (st < 0)) return {CrossKind::Disjoint, 0};
    // Left of the upward imaginary axis is Re z < 0.
    return {CrossKind::Cross, sr < 0 ? +1 : -1};
}

double angular_gap(double x, double y) {
    double d = std::fabs(x - y);
    return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace

Axis axis(const Isometry& m) {
    double tr = m.trace();
    if (!(std::fabs(tr) > 2.0)) throw NotHyperbolic("axis of a non-hyperbolic isometry");
    double s = std::sqrt((tr - 2.0) * (tr + 2.0));
    double big = 0.5 * (tr + std::copysign(s, tr));
    return {eigen_direction(m, 1.0 / big), eigen_direction(m, big)};
}

Axis apply(const Isometry& g, const Axis& ax) { return {apply(g, ax.repelling), apply(g, ax.attracting)}; }

Isometry frame_of(const Axis& ax) {
    const auto& t = ax.attracting;
    const auto& r = ax.repelling;
    // Columns: image of infinity, image of 0.
    Isometry f{t.p, r.p, t.q, r.q};
    double det = f.det();
    if (det == 0.0) throw DomainError("degenerate axis");
    if (det < 0) f.b = -f.b, f.d = -f.d, det = -det;
    return normalized(f);
}

Crossing axes_cross(const Axis& a, const Axis& b) {
    double a0 = a.repelling.angle(), a1 = a.attracting.angle();
    double b0 = b.repelling.angle(), b1 = b.attracting.angle();
    if ((angular_gap(a0, b0) < kAxisTolerance && angular_gap(a1, b1) < kAxisTolerance) ||
        (angular_gap(a0, b1) < kAxisTolerance && angular_gap(a1, b0) < kAxisTolerance))
        return {CrossKind::Shared, 0};
    Isometry fi = frame_of(a).inverse();
    return classify_normalized(apply(fi, b.repelling), apply(fi, b.attracting));
}

Crossing elements_cross(const Isometry& ga, const Isometry& gb) {
    Isometry ab = ga * gb, ba = gb * ga;
    double scale = (std::fabs(ga.a) + std::fabs(ga.b) + std::fabs(ga.c) + std::fabs(ga.d)) *
                   (std::fabs(gb.a) + std::fabs(gb.b) + std::fabs(gb.c) + std::fabs(gb.d));
    double comm = std::fabs(ab.a - ba.a) + std::fabs(ab.b - ba.b) + std::fabs(ab.c - ba.c) +
                  std::fabs(ab.d - ba.d);
    if (comm <= kAxisTolerance * scale) return {CrossKind::Shared, 0};
    Isometry f = frame_of(axis(ga));
    Isometry bn = f.inverse() * gb * f;
    Axis b = axis(bn);
    return classify_normalized(b.repelling, b.attracting);
}

}  // namespace hypk
