#pragma once

#include <cmath>

namespace hypk {

namespace constants {
// Short-curve threshold e^{-sqrt 2}; below it the collar half-width dominates |log l|.
inline const double a1 = std::exp(-std::sqrt(2.0));
inline const double two_arcsinh1 = 2.0 * std::asinh(1.0);
}  // namespace constants

struct CollarData {
    double curve_length;
    double half_width;
    double boundary_circle_length;
};

// arccosh(1+u) without cancellation for small u >= 0.
double acosh1p(double u);
// arccosh(x) routed through acosh1p; x >= 1 required.
double stable_acosh(double x);

double collar_half_width(double l);
double collar_circle_length(double l, double rho);
CollarData collar(double l);

// Common perpendicular between boundaries 1 and 2 of a pants with boundary lengths l1,l2,l3.
double perp_distinct(double l1, double l2, double l3);
// Perpendicular from boundary 1 to itself, given the 1-3 perpendicular eta13.
double perp_same(double l1, double l3, double eta13);
double arc_with_feet(double rho1, double rho2, double eta);
double thin_crossing_model(double l_gamma, int m);
double trace_to_length(double tr);

}  // namespace hypk
