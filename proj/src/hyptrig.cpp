#include "hypk/hyptrig.hpp"

#include <cmath>
#include <string>

#include "hypk/errors.hpp"

namespace hypk {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

double acosh1p(double u) {
    if (!(u >= 0.0)) throw DomainError("acosh1p: argument below zero");
    return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

double stable_acosh(double x) {
    if (!(x >= 1.0)) throw DomainError("arccosh argument below 1");
    return acosh1p(x - 1.0);
}

double collar_half_width(double l) {
    require_positive(l, "collar_half_width: length");
    return std::asinh(1.0 / std::sinh(0.5 * l));
}

double collar_circle_length(double l, double rho) {
    require_positive(l, "collar_circle_length: length");
    if (!(rho >= 0.0) || rho > collar_half_width(l))
        throw DomainError("collar_circle_length: rho outside [0, half-width]");
    return l * std::cosh(rho);
}

CollarData collar(double l) {
    double w = collar_half_width(l);
    return {l, w, l * std::cosh(w)};
}

double perp_distinct(double l1, double l2, double l3) {
    require_positive(l1, "perp_distinct: l1");
    require_positive(l2, "perp_distinct: l2");
    require_positive(l3, "perp_distinct: l3");
    double s = std::sinh(0.5 * l1) * std::sinh(0.5 * l2);
    // argument minus one, using cosh a cosh b - sinh a sinh b = cosh(a-b)
    double excess = std::cosh(0.5 * l3) + std::cosh(0.5 * (l1 - l2));
    return acosh1p(excess / s);
}

double perp_same(double l1, double l3, double eta13) {
    require_positive(l1, "perp_same: l1");
    require_positive(l3, "perp_same: l3");
    require_positive(eta13, "perp_same: eta13");
    double arg = std::sinh(eta13) * std::sinh(0.5 * l3);
    if (arg < 1.0) throw DomainError("perp_same: sinh(eta13) sinh(l3/2) < 1");
    return 2.0 * acosh1p(arg - 1.0);
}

double arc_with_feet(double rho1, double rho2, double eta) {
    require_positive(eta, "arc_with_feet: eta");
    // cosh r1 cosh r2 cosh e - sinh r1 sinh r2 = cosh(r1-r2) + cosh r1 cosh r2 (cosh e - 1)
    double excess = (std::cosh(rho1 - rho2) - 1.0) +
                    std::cosh(rho1) * std::cosh(rho2) * 2.0 * std::sinh(0.5 * eta) * std::sinh(0.5 * eta);
    return acosh1p(excess);
}

double thin_crossing_model(double l_gamma, int m) {
    require_positive(l_gamma, "thin_crossing_model: length");
    if (l_gamma > constants::two_arcsinh1) throw DomainError("thin_crossing_model: length above 2 arcsinh 1");
    if (m < 0) throw DomainError("thin_crossing_model: negative crossing count");
    return 2.0 * std::fabs(std::log(l_gamma)) + m * l_gamma;
}

double trace_to_length(double tr) {
    double a = std::fabs(tr);
    if (!(a > 2.0) || !std::isfinite(a)) throw NotHyperbolic("|trace| <= 2");
    return 2.0 * acosh1p(0.5 * a - 1.0);
}

}  // namespace hypk
