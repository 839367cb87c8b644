#pragma once

#include <vector>

#include "cicf/grid.hpp"
#include "cicf/warp.hpp"

namespace cicf {

// A star-shaped axisymmetric hypersurface given as a graph r(theta) over
// the polar angle, together with the ambient model and grid it lives on.
// Model and grid are non-owning references; they must outlive the surface.
struct GraphSurface {
    const WarpModel* model = nullptr;
    const Grid* grid = nullptr;
    std::vector<double> r;
    double time = 0.0;
};

// Throws DomainError (naming the node) if some r_i leaves the open domain,
// NonFiniteError on NaN/Inf, SizeError on length mismatch.
void validate_surface(const GraphSurface& surface);

// Pointwise kinematic data of the graph:
//   phi1 = r'/lambda,  v = sqrt(1 + phi1^2),  u = lambda / v.
// If max |r'| is at machine-noise level (< 1e-14 * scale) the gradient is
// snapped to the exact slice path.
struct KinematicsField {
    std::vector<double> lambda, dlambda, d2lambda, d3lambda; // jets at r_i
    std::vector<double> phi1, v, u;
};

KinematicsField kinematics(const GraphSurface& surface);

// Full per-node curvature data. Principal curvatures of the axisymmetric
// graph (see docs/math_notes.md for the derivation):
//   kappa1 = (lambda' - phi''/v^2) / (lambda v)          (meridian)
//   kappa2 = (lambda' - cot(theta) phi') / (lambda v)    (multiplicity n-1)
// with phi'' = d1(phi1) using odd reflection at the poles. For n = 1 only
// kappa1 exists and kappa2 is unused (multiplicity 0).
struct CurvatureField {
    int n = 2; // sphere dimension (kappa2 multiplicity n-1)
    KinematicsField kin;
    std::vector<double> phi2;
    std::vector<double> kappa1, kappa2;
    std::vector<double> H;      // kappa1 + (n-1) kappa2
    std::vector<double> sigma2; // second elementary symmetric polynomial
    std::vector<double> F;      // speed n H_k / H_{k-1}, filled when k >= 1
    int speed_k = 0;
};

// Geometry only (F left empty).
CurvatureField curvature_field(const GraphSurface& surface);

// Geometry plus the quotient speed for index k; throws ConeViolation with
// the offending node if some node leaves Gamma_k.
CurvatureField curvature_field(const GraphSurface& surface, int k);

// H_j = sigma_j / binom(n, j) at one node of a computed field.
double node_h_k(const CurvatureField& field, int node, int j);

// min over nodes and principal directions of (kappa - 1); the surface is
// horo-convex iff the result is >= 0.
double horoconvexity_margin(const CurvatureField& field);

// Convenience: oscillation max r - min r.
double oscillation(const GraphSurface& surface);

} // namespace cicf
