#pragma once

#include <array>
#include <optional>

namespace hypk {

// z -> (a z + b) / (c z + d); kept at determinant 1 (up to sign) by compose().
struct Isometry {
    double a = 1, b = 0, c = 0, d = 1;

    static Isometry identity() { return {}; }
    // Translation by L along the imaginary axis, from 0 towards infinity.
    static Isometry translation(double L);
    // Rotation by angle phi about the point i.
    static Isometry rotation(double phi);

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Isometry inverse() const { return {d, -b, -c, a}; }
    bool is_hyperbolic() const;
    double translation_length() const;
};

Isometry compose(const Isometry& x, const Isometry& y);
inline Isometry operator*(const Isometry& x, const Isometry& y) { return compose(x, y); }
// Rescale so det = 1; throws DomainError on det <= 0.
Isometry normalized(const Isometry& m);

// Point of the boundary R u {inf}, homogeneous (p : q) with q = 0 meaning infinity.
struct BoundaryPoint {
    double p = 0, q = 1;

    static BoundaryPoint infinity() { return {1, 0}; }
    static BoundaryPoint real(double x) { return {x, 1}; }
    bool is_infinity() const { return q == 0; }
    // Position on the circle, in [0, 2pi).
    double angle() const;
};

BoundaryPoint apply(const Isometry& g, const BoundaryPoint& x);

struct Axis {
    BoundaryPoint repelling, attracting;
    Axis reversed() const { return {attracting, repelling}; }
};

Axis axis(const Isometry& m);
Axis apply(const Isometry& g, const Axis& ax);

enum class CrossKind { Disjoint, Cross, Shared };

struct Crossing {
    CrossKind kind = CrossKind::Disjoint;
    int sign = 0;  // +1 when b passes from the left of a to its right
};

inline constexpr double kAxisTolerance = 1e-9;

Crossing axes_cross(const Axis& a, const Axis& b);
// Same predicate evaluated in the frame where the axis of ga is (0, inf); better
// conditioned than going through endpoint angles when both are group elements.
Crossing elements_cross(const Isometry& ga, const Isometry& gb);

// Isometry sending the oriented axis (0 -> inf) onto ax, i to some point of ax.
Isometry frame_of(const Axis& ax);

}  // namespace hypk
