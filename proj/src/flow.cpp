#include "cicf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cicf/quantities.hpp"
#include "cicf/symmetric.hpp"

namespace cicf {

namespace {

// Per-node scratch arrays for one speed evaluation; reused across RK stages
// and steps so the inner loop does not allocate.
struct Pipeline {
    std::vector<double> dr, phi1, phi2, lam, lamp, v, u, k1, k2, F, speedv;

    void resize(int N) {
        for (auto* p : {&dr, &phi1, &phi2, &lam, &lamp, &v, &u, &k1, &k2, &F, &speedv})
            p->resize(N);
    }
};

// Fills the pipeline from the radii array: kinematics, curvatures, cone
// check and the constrained speed. Throws DomainError / NonFiniteError /
// ConeViolation naming the node.
void eval_speed_pipeline(const WarpModel& w, const Grid& g, const std::vector<double>& r, int k,
                         Pipeline& P) {
    const int N = g.N;
    const int n = g.n;
    double rmax = 0.0;
    for (int i = 0; i < N; ++i) {
        const double ri = r[i];
        if (!std::isfinite(ri))
            throw NonFiniteError("flow: non-finite radius at node " + std::to_string(i));
        if (!(ri > w.a) || !(ri < w.b))
            throw DomainError("flow: radius " + std::to_string(ri) + " at node " +
                              std::to_string(i) + " left the domain (" + std::to_string(w.a) +
                              ", " + std::to_string(w.b) + ")");
        rmax = std::max(rmax, std::abs(ri));
    }

    d1_into(g, r, P.dr, Parity::Even);
    double drmax = 0.0;
    for (int i = 0; i < N; ++i)
        drmax = std::max(drmax, std::abs(P.dr[i]));
    if (drmax <= 1e-14 * std::max(1.0, rmax))
        std::fill(P.dr.begin(), P.dr.end(), 0.0);

    for (int i = 0; i < N; ++i) {
        eval_pair(w, r[i], P.lam[i], P.lamp[i]);
        P.phi1[i] = P.dr[i] / P.lam[i];
        P.v[i] = std::sqrt(1.0 + P.phi1[i] * P.phi1[i]);
        P.u[i] = P.lam[i] / P.v[i];
    }
    d1_into(g, P.phi1, P.phi2, Parity::Odd);

    for (int i = 0; i < N; ++i) {
        const double lam = P.lam[i], v = P.v[i];
        P.k1[i] = (P.lamp[i] - P.phi2[i] / (v * v)) / (lam * v);
        double kap2 = 0.0;
        if (n >= 2)
            kap2 = (P.lamp[i] - g.cot_theta[i] * P.phi1[i]) / (lam * v);
        P.k2[i] = kap2;
        if (!axisym_in_gamma_cone(P.k1[i], kap2, n, k))
            throw ConeViolation("flow: curvature left Gamma_" + std::to_string(k) +
                                    " at node " + std::to_string(i),
                                i);
        P.F[i] = axisym_speed_quotient(P.k1[i], kap2, n, k);
        P.speedv[i] = double(n) / P.F[i] - P.u[i] / P.lamp[i];
    }
}

double cfl_dt_from_pipeline(const Grid& g, const Pipeline& P, int k, double cfl) {
    double dmax = 0.0;
    for (int i = 0; i < g.N; ++i) {
        const double fk1 = axisym_speed_dkappa1(P.k1[i], P.k2[i], g.n, k);
        const double d = g.n * fk1 / (P.lam[i] * P.lam[i] * P.v[i] * P.v[i] * P.F[i] * P.F[i]);
        dmax = std::max(dmax, d);
    }
    if (!(dmax > 0.0))
        throw ConeViolation("cfl_dt: nonpositive diffusion coefficient");
    return cfl * g.dtheta * g.dtheta / dmax;
}

// One RK4 update of r in place; P holds the stage-1 evaluation on entry and
// the work vectors internally. rhs buffers belong to the caller.
void rk4_update(const WarpModel& w, const Grid& g, int k, double dt, std::vector<double>& r,
                Pipeline& P, std::vector<double>& rhs1, std::vector<double>& rhs2,
                std::vector<double>& rhs3, std::vector<double>& stage) {
    const int N = g.N;
    for (int i = 0; i < N; ++i)
        rhs1[i] = P.speedv[i] * P.v[i];

    for (int i = 0; i < N; ++i)
        stage[i] = r[i] + 0.5 * dt * rhs1[i];
    eval_speed_pipeline(w, g, stage, k, P);
    for (int i = 0; i < N; ++i)
        rhs2[i] = P.speedv[i] * P.v[i];

    for (int i = 0; i < N; ++i)
        stage[i] = r[i] + 0.5 * dt * rhs2[i];
    eval_speed_pipeline(w, g, stage, k, P);
    for (int i = 0; i < N; ++i)
        rhs3[i] = P.speedv[i] * P.v[i];

    for (int i = 0; i < N; ++i)
        stage[i] = r[i] + dt * rhs3[i];
    eval_speed_pipeline(w, g, stage, k, P);
    for (int i = 0; i < N; ++i)
        r[i] += dt / 6.0 * (rhs1[i] + 2.0 * rhs2[i] + 2.0 * rhs3[i] + P.speedv[i] * P.v[i]);
}

} // namespace

void validate_flow_config(const FlowConfig& config, int n) {
    if (config.k < 1 || config.k > n)
        throw ConfigError("flow config: k must be in 1..n");
    if (!(config.cfl > 0.0) || config.cfl > 1.0)
        throw ConfigError("flow config: cfl must be in (0, 1]");
    if (!(config.t_end > 0.0))
        throw ConfigError("flow config: t_end must be positive");
    if (!(config.stop_speed_tol > 0.0) || !(config.stop_osc_tol > 0.0))
        throw ConfigError("flow config: stop tolerances must be positive");
    if (config.max_steps < 1 || config.record_every < 1)
        throw ConfigError("flow config: max_steps and record_every must be >= 1");
}

std::vector<double> speed(const GraphSurface& surface, int k) {
    validate_surface(surface);
    Pipeline P;
    P.resize(surface.grid->N);
    eval_speed_pipeline(*surface.model, *surface.grid, surface.r, k, P);
    return P.speedv;
}

double cfl_dt(const GraphSurface& surface, int k, double cfl) {
    validate_surface(surface);
    Pipeline P;
    P.resize(surface.grid->N);
    eval_speed_pipeline(*surface.model, *surface.grid, surface.r, k, P);
    return cfl_dt_from_pipeline(*surface.grid, P, k, cfl);
}

GraphSurface step(const GraphSurface& surface, int k, double dt) {
    validate_surface(surface);
    const Grid& g = *surface.grid;
    GraphSurface out = surface;
    Pipeline P;
    P.resize(g.N);
    std::vector<double> rhs1(g.N), rhs2(g.N), rhs3(g.N), stage(g.N);
    eval_speed_pipeline(*surface.model, g, out.r, k, P);
    rk4_update(*surface.model, g, k, dt, out.r, P, rhs1, rhs2, rhs3, stage);
    out.time = surface.time + dt;
    for (int i = 0; i < g.N; ++i)
        if (!(out.r[i] > surface.model->a) || !(out.r[i] < surface.model->b))
            throw DomainError("step: radius left the domain at node " + std::to_string(i));
    return out;
}

DiagnosticsRecord make_diagnostics(const GraphSurface& surface, int k, double time) {
    const CurvatureField field = curvature_field(surface, k);
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;

    DiagnosticsRecord rec;
    rec.time = time;
    rec.area = area(surface, kin);
    rec.weighted_volume = weighted_volume(surface);
    rec.weighted_area = weighted_area(surface, kin);
    rec.q = q_functional(surface, field);
    rec.minkowski_residual = minkowski_residual(surface, field);

    double fmax = -std::numeric_limits<double>::infinity();
    double fmin = std::numeric_limits<double>::infinity();
    double gmax = 0.0, anorm = 0.0, smax = 0.0;
    double kmin = std::numeric_limits<double>::infinity();
    double hmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.N; ++i) {
        fmax = std::max(fmax, field.F[i]);
        fmin = std::min(fmin, field.F[i]);
        gmax = std::max(gmax, std::abs(kin.phi1[i]));
        anorm = std::max(anorm, std::sqrt(field.kappa1[i] * field.kappa1[i] +
                                          (g.n - 1) * field.kappa2[i] * field.kappa2[i]));
        kmin = std::min(kmin, field.kappa1[i]);
        if (g.n >= 2)
            kmin = std::min(kmin, field.kappa2[i]);
        smax = std::max(smax, std::abs(double(g.n) / field.F[i] - kin.u[i] / kin.dlambda[i]));
        hmin = std::min(hmin, field.H[i]);
    }
    rec.f_max = fmax;
    rec.f_min = fmin;
    rec.grad_max = gmax;
    rec.a_norm_max = anorm;
    rec.kappa_min = kmin;
    rec.speed_max = smax;
    rec.hk_deficit = hmin > 0.0 ? heintze_karcher_deficit(surface, field)
                                : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

EvolveResult evolve(const GraphSurface& surface, const FlowConfig& config) {
    validate_surface(surface);
    const Grid& g = *surface.grid;
    const WarpModel& w = *surface.model;
    validate_flow_config(config, g.n);

    // Admissibility of the initial surface: cone membership everywhere and,
    // on the spherical cap, strict convexity.
    {
        const CurvatureField f0 = curvature_field(surface, config.k);
        if (w.kind == ModelKind::SphericalCap) {
            for (int i = 0; i < g.N; ++i)
                if (!(f0.kappa1[i] > 0.0) || !(f0.kappa2[i] > 0.0))
                    throw GeometryError(
                        "evolve: spherical ambient requires a strictly convex initial "
                        "surface (node " +
                        std::to_string(i) + ")");
        }
    }

    EvolveResult res;
    res.final_surface = surface;
    std::vector<double>& r = res.final_surface.r;

    Pipeline P;
    P.resize(g.N);
    std::vector<double> rhs1(g.N), rhs2(g.N), rhs3(g.N), stage(g.N);

    double t = surface.time;
    res.trace.push_back(make_diagnostics(res.final_surface, config.k, t));

    eval_speed_pipeline(w, g, r, config.k, P);

    for (long s = 1; s <= config.max_steps; ++s) {
        double dt = cfl_dt_from_pipeline(g, P, config.k, config.cfl);
        dt = std::min(dt, config.t_end + surface.time - t);

        try {
            rk4_update(w, g, config.k, dt, r, P, rhs1, rhs2, rhs3, stage);
            t += dt;
            res.steps = s;
            eval_speed_pipeline(w, g, r, config.k, P);
        } catch (const NonFiniteError& e) {
            throw NonFiniteError(std::string(e.what()) + " (t = " + std::to_string(t) +
                                 ", step = " + std::to_string(s) + ")");
        }

        double smax = 0.0;
        double rlo = r[0], rhi = r[0];
        for (int i = 0; i < g.N; ++i) {
            smax = std::max(smax, std::abs(P.speedv[i]));
            rlo = std::min(rlo, r[i]);
            rhi = std::max(rhi, r[i]);
        }
        const double osc = rhi - rlo;

        const bool converged = smax < config.stop_speed_tol && osc < config.stop_osc_tol;
        const bool time_done = t >= surface.time + config.t_end * (1.0 - 1e-15);
        const bool out_of_steps = s == config.max_steps;

        if (s % config.record_every == 0 || converged || time_done || out_of_steps) {
            res.final_surface.time = t;
            res.trace.push_back(make_diagnostics(res.final_surface, config.k, t));
        }

        if (converged || time_done || out_of_steps) {
            res.stop_reason = converged ? StopReason::Converged
                                        : (time_done ? StopReason::TimeEnd : StopReason::MaxSteps);
            break;
        }
    }
    res.final_surface.time = t;
    return res;
}

} // namespace cicf
