#include "cicf/initdata.hpp"

#include <cmath>
#include <string>

namespace cicf {

GraphSurface make_slice(const WarpModel& model, const Grid& grid, double s) {
    if (!(s > model.a) || !(s < model.b))
        throw DomainError("make_slice: s = " + std::to_string(s) + " outside domain");
    GraphSurface surf;
    surf.model = &model;
    surf.grid = &grid;
    surf.r.assign(grid.N, s);
    return surf;
}

GraphSurface make_perturbed_slice(const WarpModel& model, const Grid& grid, double s,
                                  double amplitude, int mode) {
    if (mode < 1)
        throw GeometryError("make_perturbed_slice: mode must be >= 1");
    GraphSurface surf;
    surf.model = &model;
    surf.grid = &grid;
    surf.r.resize(grid.N);
    for (int i = 0; i < grid.N; ++i)
        surf.r[i] = s + amplitude * std::cos(mode * grid.theta[i]);
    validate_surface(surf); // DomainError names the offending node
    return surf;
}

namespace {

// Signed law-of-cosines residual, arranged so the geodesic radius of the
// point at graph radius r and polar angle theta minus rho has the sign of g.
double sphere_residual(ModelKind kind, double r, double d, double c, double rho) {
    if (kind == ModelKind::Hyperbolic)
        return std::cosh(r) * std::cosh(d) - std::sinh(r) * std::sinh(d) * c - std::cosh(rho);
    // Spherical: cos is decreasing, flip so the residual increases in r.
    return std::cos(rho) - (std::cos(r) * std::cos(d) + std::sin(r) * std::sin(d) * c);
}

} // namespace

GraphSurface make_offcenter_sphere(const WarpModel& model, const Grid& grid, double rho,
                                   double d) {
    if (model.kind != ModelKind::Hyperbolic && model.kind != ModelKind::SphericalCap)
        throw GeometryError("make_offcenter_sphere: supported in Hyperbolic and SphericalCap only");
    if (d < 0.0)
        throw GeometryError("make_offcenter_sphere: offset must be nonnegative");
    if (!(d < rho))
        throw GeometryError("make_offcenter_sphere: origin outside the sphere (need d < rho)");
    if (d == 0.0)
        return make_slice(model, grid, rho);
    if (!(rho - d > model.a) || !(rho + d < model.b))
        throw DomainError("make_offcenter_sphere: radius band leaves domain");

    GraphSurface surf;
    surf.model = &model;
    surf.grid = &grid;
    surf.r.resize(grid.N);
    for (int i = 0; i < grid.N; ++i) {
        const double c = std::cos(grid.theta[i]);
        // [rho-d, rho+d] brackets the unique ray-sphere intersection: the
        // residual is strictly negative at the lower end and strictly
        // positive at the upper end for cell-centered theta in (0, pi).
        double lo = rho - d, hi = rho + d;
        for (int it = 0; it < 110 && hi - lo > 1e-16 * (1.0 + rho); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sphere_residual(model.kind, mid, d, c, rho) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        surf.r[i] = 0.5 * (lo + hi);
    }
    return surf;
}

} // namespace cicf
