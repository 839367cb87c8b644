#pragma once

#include <string>
#include <vector>

#include "cicf/geometry.hpp"

namespace cicf {

// Global functionals of a star-shaped graph, the discrete identities that
// vanish in the continuum, slice comparison profiles and the inequality
// audit.

// |Sigma| = integral of v lambda^n over the grid (graph area element).
double area(const GraphSurface& surface);
double area(const GraphSurface& surface, const KinematicsField& kin);

// integral over the enclosed domain of lambda', i.e. quadrature of
// Lambda(r(theta)).
double weighted_volume(const GraphSurface& surface);

// integral over Sigma of lambda' dmu.
double weighted_area(const GraphSurface& surface);
double weighted_area(const GraphSurface& surface, const KinematicsField& kin);

// integral over Sigma of H lambda' dmu.
double mean_weighted(const GraphSurface& surface);
double mean_weighted(const GraphSurface& surface, const CurvatureField& field);

// 2n * integral over the enclosed domain of lambda' lambda'' / lambda.
double curvature_volume(const GraphSurface& surface);

// Q(Sigma) = mean_weighted - curvature_volume (the audited functional).
double q_functional(const GraphSurface& surface);
double q_functional(const GraphSurface& surface, const CurvatureField& field);

// integral of (n lambda' - H u) dmu; zero on any closed hypersurface, the
// discrete value measures scheme consistency.
double minkowski_residual(const GraphSurface& surface);
double minkowski_residual(const GraphSurface& surface, const CurvatureField& field);

// LHS - RHS of the integral identity
//   integral ((n-1) H lambda' - 2 sigma2 u) dmu
//     = -(n-1) integral [lambda''/lambda + (1-lambda'^2)/lambda^2]
//          * lambda * |grad r|^2 * <d_r, nu> dmu
// with |grad r|^2 = 1 - 1/v^2 and <d_r, nu> = 1/v; both sides are
// evaluated independently.
double sigma2_identity_residual(const GraphSurface& surface);
double sigma2_identity_residual(const GraphSurface& surface, const CurvatureField& field);

// integral of (n lambda'/H - u) dmu; requires H > 0 at every node
// (MeanConvexityError otherwise); nonnegative for star-shaped mean-convex
// hypersurfaces in the supported models, zero on slices.
double heintze_karcher_deficit(const GraphSurface& surface);
double heintze_karcher_deficit(const GraphSurface& surface, const CurvatureField& field);

// Tabulated slice functions s -> (A, W, Q) with analytic values and slopes:
//   A(s) = |S^n| lambda^n
//   W(s) = |S^n| Lambda(s)
//   Q(s) = n |S^n| lambda'^2 lambda^(n-1) - 2n |S^n| K(s)
// A, W and Q are strictly increasing for n >= 2, which makes the inverse
// maps xi1 = Q o A^{-1} and xi0 = Q o W^{-1} well defined.
struct SliceProfile {
    const WarpModel* model = nullptr;
    int n = 2;
    std::vector<double> s, A, W, Q;
    std::vector<double> dA, dW, dQ; // analytic slopes for cubic interpolation
};

SliceProfile build_slice_profile(const WarpModel& model, int n, int samples, double s_lo,
                                 double s_hi);

// Q at the slice whose area (resp. weighted volume) matches the argument.
// Throws RangeError when the target lies outside the tabulated ladder.
double xi1(const SliceProfile& profile, double area_value);
double xi0(const SliceProfile& profile, double wvol_value);

// Slice values by closed form (used by certification and reports).
double slice_area(const WarpModel& model, int n, double s);
double slice_weighted_volume(const WarpModel& model, int n, double s);
double slice_q(const WarpModel& model, int n, double s);

struct InequalityLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0; // lhs - rhs
    bool applicable = false;
    std::string hypothesis_notes;
};

// The audit battery:
//   (1) Q(Sigma) >= xi1(|Sigma|)                      [AdS-Schwarzschild / hyperbolic, H > 0]
//   (2) Q(Sigma) >= xi0(weighted volume)              [same]
//   (3) weighted Minkowski inequality                 [hyperbolic, H > 0]
//   (4) weighted-area vs weighted-volume inequality   [hyperbolic, horo-convex]
//   (5) comparison lines from the classical inverse mean curvature flow
// Lines whose hypotheses fail are reported with applicable = false.
std::vector<InequalityLine> inequality_report(const GraphSurface& surface,
                                              const SliceProfile& profile);

// Default audit slack for a computed lhs at the surface's resolution.
double inequality_slack(const GraphSurface& surface, double lhs);

} // namespace cicf
