#pragma once

#include <string>
#include <vector>

#include "cicf/geometry.hpp"

namespace cicf {

// Time-stepping of the scalar flow equation. The stepped unknown is the
// graph radius r with right-hand side
//
//     dr/dt = (n/F - u/lambda') * v
//
// integrated by explicit RK4 under a parabolic CFL restriction.

struct FlowConfig {
    int k = 1;            // curvature-quotient index of the speed
    double cfl = 0.4;     // in (0, 1]
    double t_end = 1.0;
    double stop_speed_tol = 1e-8;
    double stop_osc_tol = 1e-6;
    long max_steps = 5000000;
    long record_every = 100;
};

// One time-sample of all monitored functionals and a-priori quantities.
struct DiagnosticsRecord {
    double time = 0.0;
    double area = 0.0;
    double weighted_volume = 0.0;
    double weighted_area = 0.0;
    double q = 0.0;      // mean_weighted - curvature_volume
    double f_max = 0.0;
    double f_min = 0.0;
    double grad_max = 0.0;   // max |phi'|
    double a_norm_max = 0.0; // max sqrt(kappa1^2 + (n-1) kappa2^2)
    double kappa_min = 0.0;
    double speed_max = 0.0;  // max |n/F - u/lambda'|
    double minkowski_residual = 0.0;
    double hk_deficit = 0.0; // NaN when the surface is not mean-convex
};

enum class StopReason { Converged, TimeEnd, MaxSteps };

struct EvolveResult {
    GraphSurface final_surface;
    std::vector<DiagnosticsRecord> trace;
    long steps = 0;
    StopReason stop_reason = StopReason::TimeEnd;
};

// Pointwise speed n/F - u/lambda'. Throws ConeViolation (with node) if
// some node leaves Gamma_k, DomainError if a radius leaves the domain.
std::vector<double> speed(const GraphSurface& surface, int k);

// Parabolic step bound dt = cfl * dtheta^2 / max_i D_i with diffusion
// coefficient D = n F_kappa1 / (lambda^2 v^2 F^2).
double cfl_dt(const GraphSurface& surface, int k, double cfl);

// One explicit RK4 update by dt (caller guarantees dt <= cfl_dt).
GraphSurface step(const GraphSurface& surface, int k, double dt);

// Steps until t_end, max_steps, or convergence (speed_max below
// stop_speed_tol and oscillation below stop_osc_tol); records diagnostics
// every record_every steps plus the initial and final states.
EvolveResult evolve(const GraphSurface& surface, const FlowConfig& config);

// Full diagnostics sample of a surface at a given flow time.
DiagnosticsRecord make_diagnostics(const GraphSurface& surface, int k, double time);

void validate_flow_config(const FlowConfig& config, int n);

} // namespace cicf
