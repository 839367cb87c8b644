#include "cicf/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cicf {

double trace_value(const DiagnosticsRecord& r, TraceField field) {
    switch (field) {
    case TraceField::Area: return r.area;
    case TraceField::WeightedVolume: return r.weighted_volume;
    case TraceField::WeightedArea: return r.weighted_area;
    case TraceField::Q: return r.q;
    case TraceField::FMax: return r.f_max;
    case TraceField::FMin: return r.f_min;
    case TraceField::GradMax: return r.grad_max;
    case TraceField::ANormMax: return r.a_norm_max;
    case TraceField::KappaMin: return r.kappa_min;
    case TraceField::SpeedMax: return r.speed_max;
    case TraceField::MinkowskiResidual: return r.minkowski_residual;
    case TraceField::HkDeficit: return r.hk_deficit;
    }
    throw IndexError("trace_value: unknown field");
}

std::string trace_field_name(TraceField field) {
    switch (field) {
    case TraceField::Area: return "area";
    case TraceField::WeightedVolume: return "weighted_volume";
    case TraceField::WeightedArea: return "weighted_area";
    case TraceField::Q: return "Q";
    case TraceField::FMax: return "F_max";
    case TraceField::FMin: return "F_min";
    case TraceField::GradMax: return "grad_max";
    case TraceField::ANormMax: return "A_norm_max";
    case TraceField::KappaMin: return "kappa_min";
    case TraceField::SpeedMax: return "speed_max";
    case TraceField::MinkowskiResidual: return "minkowski_residual";
    case TraceField::HkDeficit: return "hk_deficit";
    }
    throw IndexError("trace_field_name: unknown field");
}

MonotoneVerdict audit_monotone(const std::vector<DiagnosticsRecord>& trace, TraceField field,
                               Direction direction, double slack) {
    MonotoneVerdict v;
    v.slack = slack;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double inc = trace_value(trace[i], field) - trace_value(trace[i - 1], field);
        const double breach = direction == Direction::NonDecreasing ? -inc : inc;
        if (breach > slack && breach > v.worst_violation) {
            v.pass = false;
            v.worst_violation = breach;
            v.index = i;
        }
    }
    return v;
}

ConvergenceCertificate certify_convergence(const std::vector<DiagnosticsRecord>& trace,
                                           const GraphSurface& final_surface,
                                           double stop_speed_tol, double stop_osc_tol) {
    if (trace.empty())
        throw SizeError("certify_convergence: empty trace");
    ConvergenceCertificate c;
    c.s_star = std::accumulate(final_surface.r.begin(), final_surface.r.end(), 0.0) /
               double(final_surface.r.size());
    c.osc = oscillation(final_surface);
    c.speed_max = trace.back().speed_max;
    const WarpModel& w = *final_surface.model;
    const int n = final_surface.grid->n;
    const double a_star = slice_area(w, n, c.s_star);
    const double w_star = slice_weighted_volume(w, n, c.s_star);
    const double q_star = slice_q(w, n, c.s_star);
    c.area_residual = std::abs(trace.back().area - a_star) / std::abs(a_star);
    c.wvol_residual = std::abs(trace.back().weighted_volume - w_star) / std::abs(w_star);
    c.q_residual = std::abs(trace.back().q - q_star) /
                   std::max(std::abs(q_star), 1e-300);
    c.converged = c.speed_max < stop_speed_tol && c.osc < stop_osc_tol;
    return c;
}

double refinement_order(double v_coarse, double v_mid, double v_fine) {
    const double d1 = std::abs(v_coarse - v_mid);
    const double d2 = std::abs(v_mid - v_fine);
    if (d2 == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::log2(d1 / d2);
}

} // namespace cicf
