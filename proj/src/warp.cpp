#include "cicf/warp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cicf {

namespace {

constexpr double kPi = std::numbers::pi;

// Defining polynomial of the AdS-Schwarzschild relation lambda'^2 = P(lambda)
// and its lambda-derivatives.
double ads_P(double l, int n, double m) {
    return 1.0 + l * l - m * std::pow(l, 1.0 - n);
}
double ads_P1(double l, int n, double m) {
    return 2.0 * l + m * (n - 1.0) * std::pow(l, -double(n));
}
double ads_P2(double l, int n, double m) {
    return 2.0 - m * double(n) * (n - 1.0) * std::pow(l, -double(n) - 1.0);
}
double ads_P3(double l, int n, double m) {
    return m * double(n) * (n - 1.0) * (n + 1.0) * std::pow(l, -double(n) - 2.0);
}

struct OdeState {
    double l;  // lambda
    double w;  // lambda'
};

// Second-order form lambda'' = P'(lambda)/2; the defining relation is its
// conserved first integral, which keeps the horizon start non-degenerate.
OdeState ads_rhs(const OdeState& y, int n, double m) {
    return {y.w, 0.5 * ads_P1(y.l, n, m)};
}

OdeState rk4_step(const OdeState& y, double h, int n, double m) {
    const OdeState k1 = ads_rhs(y, n, m);
    const OdeState y2{y.l + 0.5 * h * k1.l, y.w + 0.5 * h * k1.w};
    const OdeState k2 = ads_rhs(y2, n, m);
    const OdeState y3{y.l + 0.5 * h * k2.l, y.w + 0.5 * h * k2.w};
    const OdeState k3 = ads_rhs(y3, n, m);
    const OdeState y4{y.l + h * k3.l, y.w + h * k3.w};
    const OdeState k4 = ads_rhs(y4, n, m);
    return {y.l + h / 6.0 * (k1.l + 2.0 * k2.l + 2.0 * k3.l + k4.l),
            y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

bool state_ok(const OdeState& y, double lambda0) {
    return std::isfinite(y.l) && std::isfinite(y.w) && y.l > 0.5 * lambda0;
}

// Step-doubling RK4 with error control from r_from to r_to. The horizon
// boundary layer for small m forces very small steps near r = 0; the
// controller shrinks into it and grows out again. The step size h is kept
// across segments.
void integrate_segment(OdeState& y, double r_from, double r_to, int n, double m,
                       double lambda0, double& h) {
    const double tol = 1e-13;
    double r = r_from;
    int guard = 0;
    for (;;) {
        const double rem = r_to - r;
        // Stop once the remainder is below resolvable spacing; stepping a
        // sub-ulp remainder would spin without advancing r.
        if (rem <= 1e-13 * std::max(1.0, std::abs(r_to)))
            break;
        if (++guard > 200000)
            throw ConvergenceError("ads_schwarzschild: ODE integration stalled");
        const double hs = std::min(h, rem);
        const OdeState full = rk4_step(y, hs, n, m);
        const OdeState half = rk4_step(rk4_step(y, 0.5 * hs, n, m), 0.5 * hs, n, m);
        if (!state_ok(full, lambda0) || !state_ok(half, lambda0)) {
            h = 0.25 * hs;
            if (h < 1e-16)
                throw ConvergenceError("ads_schwarzschild: step size underflow");
            continue;
        }
        const double err = std::max(std::abs(full.l - half.l), std::abs(full.w - half.w)) / 15.0;
        const double scale = tol * (1.0 + std::abs(y.l) + std::abs(y.w));
        if (err > scale) {
            h = 0.9 * hs * std::pow(scale / err, 0.2);
            if (h < 1e-16)
                throw ConvergenceError("ads_schwarzschild: step size underflow");
            continue;
        }
        // Local Richardson extrapolation of the two half steps.
        y = {half.l + (half.l - full.l) / 15.0, half.w + (half.w - full.w) / 15.0};
        r += hs;
        const double grow = err > 0.0 ? std::min(2.0, 0.9 * std::pow(scale / err, 0.2)) : 2.0;
        h = std::max(hs * grow, 1e-16);
    }
}

double hermite_uniform(double h, double r, const std::vector<double>& y,
                       const std::vector<double>& s) {
    const int cells = int(y.size()) - 1;
    int i = int(std::floor(r / h));
    i = std::clamp(i, 0, cells - 1);
    const double t = (r - i * h) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y[i] + (t3 - 2.0 * t2 + t) * h * s[i] +
           (-2.0 * t3 + 3.0 * t2) * y[i + 1] + (t3 - t2) * h * s[i + 1];
}

} // namespace

double unit_sphere_area(int n) {
    if (n < 0)
        throw DomainError("unit_sphere_area: n must be nonnegative");
    const double half = 0.5 * (n + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

bool has_nonnegative_radial_convexity(const WarpModel& model) {
    return model.kind != ModelKind::SphericalCap;
}

WarpModel make_spherical_cap(int n) {
    if (n < 1)
        throw DomainError("make_spherical_cap: n must be >= 1");
    WarpModel w;
    w.kind = ModelKind::SphericalCap;
    w.n = n;
    w.a = 0.0;
    w.b = 0.5 * kPi;
    return w;
}

WarpModel make_hyperbolic(int n) {
    if (n < 1)
        throw DomainError("make_hyperbolic: n must be >= 1");
    WarpModel w;
    w.kind = ModelKind::Hyperbolic;
    w.n = n;
    return w;
}

WarpModel make_euclidean(int n) {
    if (n < 1)
        throw DomainError("make_euclidean: n must be >= 1");
    WarpModel w;
    w.kind = ModelKind::Euclidean;
    w.n = n;
    return w;
}

double ads_horizon_lambda(int n, double m) {
    if (n < 2 || m <= 0.0)
        throw DomainError("ads_horizon_lambda: need n >= 2 and m > 0");
    // g is strictly increasing on (0, inf) with g(0+) = -inf, so the root
    // is unique; bracket geometrically, bisect, then polish with Newton.
    auto g = [&](double l) { return ads_P(l, n, m); };
    double lo = 1.0;
    int guard = 0;
    while (g(lo) >= 0.0) {
        lo *= 0.5;
        if (++guard > 4000)
            throw ConvergenceError("ads_horizon_lambda: no lower bracket");
    }
    double hi = std::max(1.0, 2.0 * lo);
    guard = 0;
    while (g(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 4000)
            throw ConvergenceError("ads_horizon_lambda: no upper bracket");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double step = g(root) / ads_P1(root, n, m);
        root -= step;
        if (std::abs(step) < 1e-16 * root)
            break;
    }
    if (!(root > 0.0) || std::abs(g(root)) > 1e-10 * (1.0 + root * root))
        throw ConvergenceError("ads_horizon_lambda: root polish failed");
    return root;
}

WarpModel make_ads_schwarzschild(int n, double m, double r_max) {
    if (n < 2 || m <= 0.0 || r_max <= 0.0)
        throw DomainError("make_ads_schwarzschild: need n >= 2, m > 0, r_max > 0");

    WarpModel w;
    w.kind = ModelKind::AdsSchwarzschild;
    w.n = n;
    w.m = m;
    w.a = 0.0;
    w.b = r_max;
    w.horizon_lambda = ads_horizon_lambda(n, m);

    // Fill a uniform table, refining until the cubic interpolant reproduces
    // the integrated solution at cell midpoints to within 1e-9. The first
    // cell is excluded from the budget: for very small m the horizon
    // boundary layer (width O(m)) is thinner than any reasonable cell, and
    // node values there stay exact.
    const double budget = 8e-10;
    for (int cells = 1024; cells <= (1 << 19); cells *= 2) {
        const double h = r_max / cells;
        std::vector<double> l(cells + 1), l1(cells + 1), lmid(cells);
        OdeState y{w.horizon_lambda, 0.0};
        l[0] = y.l;
        l1[0] = 0.0;
        double hstep = std::min(1e-6, 0.25 * h);
        for (int j = 0; j < cells; ++j) {
            integrate_segment(y, j * h, (j + 0.5) * h, n, m, w.horizon_lambda, hstep);
            lmid[j] = y.l;
            integrate_segment(y, (j + 0.5) * h, (j + 1.0) * h, n, m, w.horizon_lambda, hstep);
            l[j + 1] = y.l;
            l1[j + 1] = y.w;
        }

        // Energy residual of the integrated states against the defining
        // relation (first integral of the stepped system).
        for (int j = 0; j <= cells; ++j) {
            const double res = l1[j] * l1[j] - ads_P(l[j], n, m);
            if (std::abs(res) > 1e-9 * (1.0 + l[j] * l[j]))
                throw ConvergenceError("ads_schwarzschild: defining relation violated at node " +
                                       std::to_string(j));
        }

        double worst = 0.0;
        for (int j = 1; j < cells; ++j) {
            const double interp = hermite_uniform(h, (j + 0.5) * h, l, l1);
            worst = std::max(worst, std::abs(interp - lmid[j]));
        }
        if (worst > budget)
            continue;

        // Monotone cubic guarantee (Fritsch-Carlson box): slopes within
        // [0, 3*secant] on every cell. Analytic slopes of the strictly
        // increasing solution satisfy this once the table is resolved.
        for (int j = 0; j < cells; ++j) {
            const double secant = (l[j + 1] - l[j]) / h;
            if (!(secant > 0.0) || l1[j] < 0.0 || l1[j + 1] < 0.0 ||
                l1[j] > 3.0 * secant || l1[j + 1] > 3.0 * secant)
                throw ConvergenceError("ads_schwarzschild: monotone interpolation check failed");
        }

        w.table_h = h;
        w.tab_l = std::move(l);
        w.tab_l1 = std::move(l1);
        const int nodes = cells + 1;
        w.tab_l2.resize(nodes);
        w.tab_l3.resize(nodes);
        w.tab_l4.resize(nodes);
        for (int j = 0; j < nodes; ++j) {
            const double lj = w.tab_l[j], wj = w.tab_l1[j];
            w.tab_l2[j] = 0.5 * ads_P1(lj, n, m);
            w.tab_l3[j] = 0.5 * ads_P2(lj, n, m) * wj;
            w.tab_l4[j] = 0.5 * (ads_P3(lj, n, m) * wj * wj + ads_P2(lj, n, m) * w.tab_l2[j]);
        }
        return w;
    }
    throw ConvergenceError("ads_schwarzschild: interpolation budget not met at maximum table size");
}

Jet4 eval(const WarpModel& model, double r) {
    if (!(r > model.a) || !(r < model.b))
        throw DomainError("eval: radius " + std::to_string(r) + " outside admissible domain (" +
                          std::to_string(model.a) + ", " + std::to_string(model.b) + ")");
    switch (model.kind) {
    case ModelKind::SphericalCap:
        return {std::sin(r), std::cos(r), -std::sin(r), -std::cos(r)};
    case ModelKind::Hyperbolic:
        return {std::sinh(r), std::cosh(r), std::sinh(r), std::cosh(r)};
    case ModelKind::Euclidean:
        return {r, 1.0, 0.0, 0.0};
    case ModelKind::AdsSchwarzschild: {
        const double h = model.table_h;
        return {hermite_uniform(h, r, model.tab_l, model.tab_l1),
                hermite_uniform(h, r, model.tab_l1, model.tab_l2),
                hermite_uniform(h, r, model.tab_l2, model.tab_l3),
                hermite_uniform(h, r, model.tab_l3, model.tab_l4)};
    }
    }
    throw DomainError("eval: unknown model kind");
}

void eval_pair(const WarpModel& model, double r, double& l, double& l1) {
    if (!(r > model.a) || !(r < model.b))
        throw DomainError("eval_pair: radius " + std::to_string(r) + " outside domain");
    switch (model.kind) {
    case ModelKind::SphericalCap:
        l = std::sin(r);
        l1 = std::cos(r);
        return;
    case ModelKind::Hyperbolic: {
        const double e = std::exp(r);
        const double ei = 1.0 / e;
        l = 0.5 * (e - ei);
        l1 = 0.5 * (e + ei);
        return;
    }
    case ModelKind::Euclidean:
        l = r;
        l1 = 1.0;
        return;
    case ModelKind::AdsSchwarzschild:
        l = hermite_uniform(model.table_h, r, model.tab_l, model.tab_l1);
        l1 = hermite_uniform(model.table_h, r, model.tab_l1, model.tab_l2);
        return;
    }
    throw DomainError("eval_pair: unknown model kind");
}

double weighted_volume_primitive(const WarpModel& model, double s) {
    if (s == model.a)
        return 0.0;
    if (!(s > model.a) || !(s < model.b))
        throw DomainError("weighted_volume_primitive: radius outside domain");
    const double p = model.n + 1.0;
    switch (model.kind) {
    case ModelKind::SphericalCap:
        return std::pow(std::sin(s), p) / p;
    case ModelKind::Hyperbolic:
        return std::pow(std::sinh(s), p) / p;
    case ModelKind::Euclidean:
        return std::pow(s, p) / p;
    case ModelKind::AdsSchwarzschild: {
        const double l = eval(model, s).l;
        return (std::pow(l, p) - std::pow(model.horizon_lambda, p)) / p;
    }
    }
    throw DomainError("weighted_volume_primitive: unknown model kind");
}

double curvature_weight_primitive(const WarpModel& model, double s) {
    if (s == model.a)
        return 0.0;
    if (!(s > model.a) || !(s < model.b))
        throw DomainError("curvature_weight_primitive: radius outside domain");
    const double p = model.n + 1.0;
    switch (model.kind) {
    case ModelKind::SphericalCap:
        return -std::pow(std::sin(s), p) / p;
    case ModelKind::Hyperbolic:
        return std::pow(std::sinh(s), p) / p;
    case ModelKind::Euclidean:
        return 0.0;
    case ModelKind::AdsSchwarzschild: {
        // lambda'' = lambda + m(n-1)/2 * lambda^-n, integrated in lambda.
        const double l = eval(model, s).l;
        const double l0 = model.horizon_lambda;
        return (std::pow(l, p) - std::pow(l0, p)) / p +
               0.5 * model.m * (model.n - 1.0) * std::log(l / l0);
    }
    }
    throw DomainError("curvature_weight_primitive: unknown model kind");
}

} // namespace cicf
