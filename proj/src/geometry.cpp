#include "cicf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cicf/symmetric.hpp"

namespace cicf {

void validate_surface(const GraphSurface& surface) {
    if (!surface.model || !surface.grid)
        throw SizeError("surface: model/grid reference missing");
    const Grid& g = *surface.grid;
    if (int(surface.r.size()) != g.N)
        throw SizeError("surface: expected " + std::to_string(g.N) + " radii, got " +
                        std::to_string(surface.r.size()));
    const WarpModel& w = *surface.model;
    for (int i = 0; i < g.N; ++i) {
        const double ri = surface.r[i];
        if (!std::isfinite(ri))
            throw NonFiniteError("surface: non-finite radius at node " + std::to_string(i));
        if (!(ri > w.a) || !(ri < w.b))
            throw DomainError("surface: radius " + std::to_string(ri) + " at node " +
                              std::to_string(i) + " outside domain (" + std::to_string(w.a) +
                              ", " + std::to_string(w.b) + ")");
    }
}

KinematicsField kinematics(const GraphSurface& surface) {
    validate_surface(surface);
    const Grid& g = *surface.grid;
    const WarpModel& w = *surface.model;
    const int N = g.N;

    KinematicsField kin;
    kin.lambda.resize(N);
    kin.dlambda.resize(N);
    kin.d2lambda.resize(N);
    kin.d3lambda.resize(N);
    kin.phi1.resize(N);
    kin.v.resize(N);
    kin.u.resize(N);

    for (int i = 0; i < N; ++i) {
        const Jet4 j = eval(w, surface.r[i]);
        kin.lambda[i] = j.l;
        kin.dlambda[i] = j.l1;
        kin.d2lambda[i] = j.l2;
        kin.d3lambda[i] = j.l3;
    }

    std::vector<double> dr = d1(g, surface.r, Parity::Even);
    double rmax = 0.0, drmax = 0.0;
    for (int i = 0; i < N; ++i) {
        rmax = std::max(rmax, std::abs(surface.r[i]));
        drmax = std::max(drmax, std::abs(dr[i]));
    }
    // Machine-noise gradients are snapped to the exact slice path so cone
    // checks never fire on round-off.
    if (drmax <= 1e-14 * std::max(1.0, rmax))
        std::fill(dr.begin(), dr.end(), 0.0);

    for (int i = 0; i < N; ++i) {
        kin.phi1[i] = dr[i] / kin.lambda[i];
        kin.v[i] = std::sqrt(1.0 + kin.phi1[i] * kin.phi1[i]);
        kin.u[i] = kin.lambda[i] / kin.v[i];
    }
    return kin;
}

CurvatureField curvature_field(const GraphSurface& surface) {
    const Grid& g = *surface.grid;
    const int N = g.N;
    const int n = g.n;

    CurvatureField f;
    f.n = n;
    f.kin = kinematics(surface);
    f.phi2 = d1(g, f.kin.phi1, Parity::Odd);
    f.kappa1.resize(N);
    f.kappa2.assign(N, 0.0);
    f.H.resize(N);
    f.sigma2.resize(N);

    for (int i = 0; i < N; ++i) {
        const double lam = f.kin.lambda[i];
        const double lamp = f.kin.dlambda[i];
        const double v = f.kin.v[i];
        f.kappa1[i] = (lamp - f.phi2[i] / (v * v)) / (lam * v);
        if (n >= 2)
            f.kappa2[i] = (lamp - g.cot_theta[i] * f.kin.phi1[i]) / (lam * v);
        f.H[i] = f.kappa1[i] + (n - 1) * f.kappa2[i];
        // sigma2 = (n-1) kappa1 kappa2 + binom(n-1,2) kappa2^2
        f.sigma2[i] = (n - 1) * f.kappa1[i] * f.kappa2[i] +
                      binomial(n - 1, 2) * f.kappa2[i] * f.kappa2[i];
    }
    return f;
}

CurvatureField curvature_field(const GraphSurface& surface, int k) {
    CurvatureField f = curvature_field(surface);
    const Grid& g = *surface.grid;
    const int n = g.n;
    f.F.resize(g.N);
    f.speed_k = k;
    for (int i = 0; i < g.N; ++i) {
        if (!axisym_in_gamma_cone(f.kappa1[i], f.kappa2[i], n, k))
            throw ConeViolation("curvature left Gamma_" + std::to_string(k) + " at node " +
                                    std::to_string(i) + " (kappa1 = " +
                                    std::to_string(f.kappa1[i]) + ", kappa2 = " +
                                    std::to_string(f.kappa2[i]) + ")",
                                i);
        f.F[i] = axisym_speed_quotient(f.kappa1[i], f.kappa2[i], n, k);
    }
    return f;
}

double node_h_k(const CurvatureField& field, int node, int j) {
    if (node < 0 || node >= int(field.kappa1.size()))
        throw IndexError("node_h_k: node out of range");
    if (j < 0 || j > field.n)
        throw IndexError("node_h_k: j outside 0..n");
    const double s = axisym_elementary_all(field.kappa1[node], field.kappa2[node], field.n)[j];
    return s / binomial(field.n, j);
}

double horoconvexity_margin(const CurvatureField& field) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.kappa1.size(); ++i) {
        margin = std::min(margin, field.kappa1[i] - 1.0);
        if (field.n >= 2)
            margin = std::min(margin, field.kappa2[i] - 1.0);
    }
    return margin;
}

double oscillation(const GraphSurface& surface) {
    const auto [mn, mx] = std::minmax_element(surface.r.begin(), surface.r.end());
    return *mx - *mn;
}

} // namespace cicf
