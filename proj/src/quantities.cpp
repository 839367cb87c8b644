#include "cicf/quantities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cicf {

namespace {

// integrate(weight * integrand) without materializing a temporary.
template <class F>
double integrate_nodes(const Grid& g, F&& integrand) {
    double acc = 0.0;
    for (int i = 0; i < g.N; ++i)
        acc += g.quad_weights[i] * integrand(i);
    return acc;
}

double pow_int(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

} // namespace

double area(const GraphSurface& surface, const KinematicsField& kin) {
    const Grid& g = *surface.grid;
    return integrate_nodes(g, [&](int i) { return kin.v[i] * pow_int(kin.lambda[i], g.n); });
}

double area(const GraphSurface& surface) { return area(surface, kinematics(surface)); }

double weighted_volume(const GraphSurface& surface) {
    validate_surface(surface);
    const Grid& g = *surface.grid;
    const WarpModel& w = *surface.model;
    return integrate_nodes(g, [&](int i) { return weighted_volume_primitive(w, surface.r[i]); });
}

double weighted_area(const GraphSurface& surface, const KinematicsField& kin) {
    const Grid& g = *surface.grid;
    return integrate_nodes(
        g, [&](int i) { return kin.dlambda[i] * kin.v[i] * pow_int(kin.lambda[i], g.n); });
}

double weighted_area(const GraphSurface& surface) {
    return weighted_area(surface, kinematics(surface));
}

double mean_weighted(const GraphSurface& surface, const CurvatureField& field) {
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;
    return integrate_nodes(g, [&](int i) {
        return field.H[i] * kin.dlambda[i] * kin.v[i] * pow_int(kin.lambda[i], g.n);
    });
}

double mean_weighted(const GraphSurface& surface) {
    return mean_weighted(surface, curvature_field(surface));
}

double curvature_volume(const GraphSurface& surface) {
    validate_surface(surface);
    const Grid& g = *surface.grid;
    const WarpModel& w = *surface.model;
    return 2.0 * g.n *
           integrate_nodes(g, [&](int i) { return curvature_weight_primitive(w, surface.r[i]); });
}

double q_functional(const GraphSurface& surface, const CurvatureField& field) {
    return mean_weighted(surface, field) - curvature_volume(surface);
}

double q_functional(const GraphSurface& surface) {
    return q_functional(surface, curvature_field(surface));
}

double minkowski_residual(const GraphSurface& surface, const CurvatureField& field) {
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;
    return integrate_nodes(g, [&](int i) {
        const double integrand = g.n * kin.dlambda[i] - field.H[i] * kin.u[i];
        return integrand * kin.v[i] * pow_int(kin.lambda[i], g.n);
    });
}

double minkowski_residual(const GraphSurface& surface) {
    return minkowski_residual(surface, curvature_field(surface));
}

double sigma2_identity_residual(const GraphSurface& surface, const CurvatureField& field) {
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;
    const double lhs = integrate_nodes(g, [&](int i) {
        const double integrand =
            (g.n - 1) * field.H[i] * kin.dlambda[i] - 2.0 * field.sigma2[i] * kin.u[i];
        return integrand * kin.v[i] * pow_int(kin.lambda[i], g.n);
    });
    const double rhs = integrate_nodes(g, [&](int i) {
        const double lam = kin.lambda[i];
        const double coef = kin.d2lambda[i] / lam +
                            (1.0 - kin.dlambda[i] * kin.dlambda[i]) / (lam * lam);
        const double grad_r_sq = 1.0 - 1.0 / (kin.v[i] * kin.v[i]);
        const double radial_cos = 1.0 / kin.v[i];
        return -(g.n - 1) * coef * lam * grad_r_sq * radial_cos * kin.v[i] * pow_int(lam, g.n);
    });
    return lhs - rhs;
}

double sigma2_identity_residual(const GraphSurface& surface) {
    return sigma2_identity_residual(surface, curvature_field(surface));
}

double heintze_karcher_deficit(const GraphSurface& surface, const CurvatureField& field) {
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;
    for (int i = 0; i < g.N; ++i)
        if (!(field.H[i] > 0.0))
            throw MeanConvexityError("heintze_karcher_deficit: H <= 0 at node " +
                                     std::to_string(i));
    return integrate_nodes(g, [&](int i) {
        return (g.n * kin.dlambda[i] / field.H[i] - kin.u[i]) * kin.v[i] *
               pow_int(kin.lambda[i], g.n);
    });
}

double heintze_karcher_deficit(const GraphSurface& surface) {
    return heintze_karcher_deficit(surface, curvature_field(surface));
}

double slice_area(const WarpModel& model, int n, double s) {
    return unit_sphere_area(n) * pow_int(eval(model, s).l, n);
}

double slice_weighted_volume(const WarpModel& model, int n, double s) {
    return unit_sphere_area(n) * weighted_volume_primitive(model, s);
}

double slice_q(const WarpModel& model, int n, double s) {
    const Jet4 j = eval(model, s);
    const double sph = unit_sphere_area(n);
    return n * sph * j.l1 * j.l1 * pow_int(j.l, n - 1) -
           2.0 * n * sph * curvature_weight_primitive(model, s);
}

SliceProfile build_slice_profile(const WarpModel& model, int n, int samples, double s_lo,
                                 double s_hi) {
    if (n < 2)
        throw GeometryError("build_slice_profile: requires n >= 2");
    if (samples < 8)
        throw SizeError("build_slice_profile: need at least 8 samples");
    if (!(s_lo > model.a) || !(s_hi < model.b) || !(s_lo < s_hi))
        throw DomainError("build_slice_profile: ladder outside domain");

    SliceProfile p;
    p.model = &model;
    p.n = n;
    p.s.resize(samples);
    p.A.resize(samples);
    p.W.resize(samples);
    p.Q.resize(samples);
    p.dA.resize(samples);
    p.dW.resize(samples);
    p.dQ.resize(samples);
    const double sph = unit_sphere_area(n);
    const double h = (s_hi - s_lo) / (samples - 1);
    for (int j = 0; j < samples; ++j) {
        const double s = s_lo + j * h;
        const Jet4 jet = eval(model, s);
        p.s[j] = s;
        p.A[j] = sph * pow_int(jet.l, n);
        p.W[j] = sph * weighted_volume_primitive(model, s);
        p.Q[j] = slice_q(model, n, s);
        p.dA[j] = sph * n * jet.l1 * pow_int(jet.l, n - 1);
        p.dW[j] = sph * jet.l1 * pow_int(jet.l, n);
        // dQ/ds = n(n-1)|S^n| lambda'^3 lambda^(n-2): the curvature-weight
        // term cancels the lambda'' part exactly, so Q is increasing for
        // every warping factor.
        p.dQ[j] = n * (n - 1.0) * sph * pow_int(jet.l1, 3) * pow_int(jet.l, n - 2);
    }
    for (int j = 0; j + 1 < samples; ++j) {
        if (!(p.A[j + 1] > p.A[j]) || !(p.W[j + 1] > p.W[j]) || !(p.Q[j + 1] >= p.Q[j]))
            throw ConvergenceError("build_slice_profile: ladder monotonicity violated");
    }
    return p;
}

namespace {

double hermite_cell(double h, double t, double y0, double y1, double m0, double m1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * m0 +
           (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * m1;
}

// Evaluate the interpolated profile quantity at radius s.
double profile_value(const SliceProfile& p, const std::vector<double>& y,
                     const std::vector<double>& dy, double s) {
    const double h = p.s[1] - p.s[0];
    int i = int(std::floor((s - p.s.front()) / h));
    i = std::clamp(i, 0, int(p.s.size()) - 2);
    return hermite_cell(h, (s - p.s[i]) / h, y[i], y[i + 1], dy[i], dy[i + 1]);
}

// Invert a strictly increasing interpolated ladder: locate the cell by
// binary search, then solve the local cubic with bisection + Newton.
double profile_invert(const SliceProfile& p, const std::vector<double>& y,
                      const std::vector<double>& dy, double target, const char* who) {
    if (!(target >= y.front()) || !(target <= y.back()))
        throw RangeError(std::string(who) + ": target " + std::to_string(target) +
                         " outside tabulated range [" + std::to_string(y.front()) + ", " +
                         std::to_string(y.back()) + "]");
    const auto it = std::upper_bound(y.begin(), y.end(), target);
    int i = std::clamp(int(it - y.begin()) - 1, 0, int(y.size()) - 2);
    if (target == y[i])
        return p.s[i];
    if (target == y[i + 1])
        return p.s[i + 1];
    const double h = p.s[1] - p.s[0];
    double tlo = 0.0, thi = 1.0;
    auto f = [&](double t) { return hermite_cell(h, t, y[i], y[i + 1], dy[i], dy[i + 1]) - target; };
    double t = 0.5;
    for (int it2 = 0; it2 < 100; ++it2) {
        const double ft = f(t);
        if (ft == 0.0)
            break;
        if (ft < 0.0)
            tlo = t;
        else
            thi = t;
        // Newton inside the bracket, bisection otherwise.
        const double t2 = t * t;
        const double dft = ((6.0 * t2 - 6.0 * t) * (y[i] - y[i + 1])) / h +
                           (3.0 * t2 - 4.0 * t + 1.0) * dy[i] + (3.0 * t2 - 2.0 * t) * dy[i + 1];
        double tn = (dft != 0.0) ? t - ft / (dft * h) : 0.5 * (tlo + thi);
        if (!(tn > tlo) || !(tn < thi))
            tn = 0.5 * (tlo + thi);
        if (std::abs(tn - t) < 1e-16)
            break;
        t = tn;
    }
    return p.s[i] + t * h;
}

} // namespace

double xi1(const SliceProfile& profile, double area_value) {
    const double s = profile_invert(profile, profile.A, profile.dA, area_value, "xi1");
    return profile_value(profile, profile.Q, profile.dQ, s);
}

double xi0(const SliceProfile& profile, double wvol_value) {
    const double s = profile_invert(profile, profile.W, profile.dW, wvol_value, "xi0");
    return profile_value(profile, profile.Q, profile.dQ, s);
}

double inequality_slack(const GraphSurface& surface, double lhs) {
    const double h = surface.grid->dtheta;
    return std::max(1e-9, 10.0 * h * h * std::abs(lhs));
}

std::vector<InequalityLine> inequality_report(const GraphSurface& surface,
                                              const SliceProfile& profile) {
    const CurvatureField field = curvature_field(surface);
    const Grid& g = *surface.grid;
    const WarpModel& w = *surface.model;
    const int n = g.n;
    const double sph = unit_sphere_area(n);

    const double surf_area = area(surface, field.kin);
    const double wvol = weighted_volume(surface);
    const double warea = weighted_area(surface, field.kin);
    const double hw = mean_weighted(surface, field);
    const double q = hw - curvature_volume(surface);
    const double hmin = *std::min_element(field.H.begin(), field.H.end());
    const double horo = horoconvexity_margin(field);

    const bool geom_family =
        w.kind == ModelKind::Hyperbolic || w.kind == ModelKind::AdsSchwarzschild;
    const bool mean_convex = hmin > 0.0;

    std::vector<InequalityLine> out;

    auto push = [&](const std::string& name, double lhs, double rhs, bool applicable,
                    const std::string& notes) {
        out.push_back({name, lhs, rhs, lhs - rhs, applicable, notes});
    };

    // (1) Q >= xi1(area), (2) Q >= xi0(weighted volume).
    {
        std::string notes;
        bool ok = geom_family && mean_convex;
        if (!geom_family)
            notes = "model outside the AdS-Schwarzschild/hyperbolic family";
        else if (!mean_convex)
            notes = "not mean-convex (min H <= 0)";
        double r1 = 0.0, r2 = 0.0;
        if (ok) {
            r1 = xi1(profile, surf_area);
            r2 = xi0(profile, wvol);
        }
        push("q_vs_xi1_area", ok ? q : 0.0, r1, ok, notes);
        push("q_vs_xi0_weighted_volume", ok ? q : 0.0, r2, ok, notes);
    }

    // (3) hyperbolic weighted Minkowski inequality.
    {
        const bool ok = (w.kind == ModelKind::Hyperbolic) && mean_convex;
        const double lhs = hw - n * (n + 1.0) * wvol;
        const double rhs =
            n * std::pow(sph, 2.0 / (n + 1.0)) * std::pow((n + 1.0) * wvol, (n - 1.0) / (n + 1.0));
        push("hyperbolic_weighted_minkowski", lhs, rhs, ok,
             ok ? "" : "requires hyperbolic model and mean-convexity");
    }

    // (4) weighted area bound for horo-convex hypersurfaces.
    {
        const bool ok = (w.kind == ModelKind::Hyperbolic) && horo >= 0.0;
        const double x = (n + 1.0) * wvol;
        const double rhs =
            std::sqrt(x * x + std::pow(sph, 2.0 / (n + 1.0)) * std::pow(x, 2.0 * n / (n + 1.0)));
        std::string notes = ok ? "" : "requires hyperbolic model and horo-convexity";
        if (w.kind == ModelKind::Hyperbolic)
            notes += (notes.empty() ? "" : "; ") + std::string("horoconvexity margin = ") +
                     std::to_string(horo);
        push("horoconvex_weighted_area", warea, rhs, ok, notes);
    }

    // (5) comparison lines from the classical inverse mean curvature flow.
    {
        const double lhs = hw - n * (n + 1.0) * wvol;
        if (w.kind == ModelKind::AdsSchwarzschild) {
            const double boundary_area = sph * pow_int(w.horizon_lambda, n);
            const double rhs = n * std::pow(sph, 1.0 / n) *
                               (std::pow(surf_area, (n - 1.0) / n) -
                                std::pow(boundary_area, (n - 1.0) / n));
            push("imcf_comparison_ads", lhs, rhs, mean_convex,
                 "informational comparison; horizon area = " + std::to_string(boundary_area));
        }
        if (w.kind == ModelKind::Hyperbolic) {
            const double rhs = n * std::pow(sph, 1.0 / n) * std::pow(surf_area, (n - 1.0) / n);
            push("imcf_comparison_hyperbolic", lhs, rhs, mean_convex,
                 "informational comparison");
        }
    }

    return out;
}

} // namespace cicf
