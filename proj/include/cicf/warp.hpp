#pragma once

#include <limits>
#include <vector>

#include "cicf/errors.hpp"

namespace cicf {

// Ambient warped products (a,b) x S^n with metric dr^2 + lambda(r)^2 sigma.
// Four families of warping factors are supported; the first three are
// closed-form, the anti-de-Sitter Schwarzschild family is tabulated from
// its defining relation
//
//     lambda'^2 = 1 + lambda^2 - m * lambda^(1-n),   m > 0,
//
// with the horizon (lambda' = 0) placed at r = 0.

enum class ModelKind {
    SphericalCap,     // lambda = sin r,  r in (0, pi/2)
    Hyperbolic,       // lambda = sinh r, r in (0, inf)
    Euclidean,        // lambda = r,      r in (0, inf)
    AdsSchwarzschild, // tabulated,       r in (0, r_max)
};

// Radial jet (lambda, lambda', lambda'', lambda''') at one radius.
struct Jet4 {
    double l;  // lambda
    double l1; // lambda'
    double l2; // lambda''
    double l3; // lambda'''
};

struct WarpModel {
    ModelKind kind;
    int n = 2;      // hypersurface dimension, ambient is (n+1)-dimensional
    double m = 0.0; // mass parameter (AdsSchwarzschild only)
    double a = 0.0; // open domain (a, b) of admissible radii
    double b = std::numeric_limits<double>::infinity();

    // AdsSchwarzschild only: horizon value lambda(0) and uniform table of
    // (lambda, lambda', lambda'', lambda''', lambda'''') node values on
    // [0, r_max]. Each quantity is interpolated by a cubic Hermite whose
    // slopes are the next derivative's node values, so all four jet
    // components come from the table and the defining relation can be
    // cross-checked between independently interpolated lambda and lambda'.
    double horizon_lambda = 0.0;
    double table_h = 0.0;
    std::vector<double> tab_l, tab_l1, tab_l2, tab_l3, tab_l4;
};

WarpModel make_spherical_cap(int n);
WarpModel make_hyperbolic(int n);
WarpModel make_euclidean(int n);

// Solves the horizon value lambda0 from 1 + l^2 - m*l^(1-n) = 0 and
// integrates the warping factor out to r_max. Throws ConvergenceError if
// root finding or the table accuracy budget (1e-9) cannot be met.
WarpModel make_ads_schwarzschild(int n, double m, double r_max);

// Horizon value alone (exposed for tests and for |dN| in reports).
double ads_horizon_lambda(int n, double m);

// Jet at a radius strictly inside (a, b). Throws DomainError otherwise.
Jet4 eval(const WarpModel& model, double r);

// lambda and lambda' only; the flow inner loop needs nothing else.
void eval_pair(const WarpModel& model, double r, double& l, double& l1);

// Lambda(s) = integral_a^s lambda'(t) lambda(t)^n dt. Strictly increasing.
double weighted_volume_primitive(const WarpModel& model, double s);

// K(s) = integral_a^s lambda'(t) lambda''(t) lambda(t)^(n-1) dt.
double curvature_weight_primitive(const WarpModel& model, double s);

// |S^n| = 2 pi^((n+1)/2) / Gamma((n+1)/2).
double unit_sphere_area(int n);

// True on the families with lambda'' >= 0 (hypothesis of the general
// convergence theorem and of the area/Q monotonicity audits).
bool has_nonnegative_radial_convexity(const WarpModel& model);

} // namespace cicf
