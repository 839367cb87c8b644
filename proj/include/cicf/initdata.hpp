#pragma once

#include "cicf/geometry.hpp"

namespace cicf {

// Generators for admissible initial hypersurfaces.

// Coordinate slice r == s (the flow's fixed points).
GraphSurface make_slice(const WarpModel& model, const Grid& grid, double s);

// r(theta) = s + amplitude * cos(mode * theta); pole-even for integer mode.
GraphSurface make_perturbed_slice(const WarpModel& model, const Grid& grid, double s,
                                  double amplitude, int mode);

// Geodesic sphere of radius rho centered at distance d from the origin
// along the axis, represented as a graph via the law of cosines:
//   Hyperbolic:   cosh rho = cosh r cosh d - sinh r sinh d cos theta
//   SphericalCap: cos rho  = cos r cos d  + sin r sin d cos theta
// Totally umbilic with kappa = coth rho (resp. cot rho). d = 0 reproduces
// make_slice bit for bit. Requires d < rho (origin strictly inside).
GraphSurface make_offcenter_sphere(const WarpModel& model, const Grid& grid, double rho,
                                   double d);

} // namespace cicf
