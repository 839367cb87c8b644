#pragma once

#include <string>
#include <vector>

#include "cicf/flow.hpp"
#include "cicf/quantities.hpp"

namespace cicf {

// Turns traces into verdicts: monotonicity audits, convergence
// certification and refinement-order estimation.

enum class TraceField {
    Area,
    WeightedVolume,
    WeightedArea,
    Q,
    FMax,
    FMin,
    GradMax,
    ANormMax,
    KappaMin,
    SpeedMax,
    MinkowskiResidual,
    HkDeficit,
};

double trace_value(const DiagnosticsRecord& record, TraceField field);
std::string trace_field_name(TraceField field);

enum class Direction { NonDecreasing, NonIncreasing };

struct MonotoneVerdict {
    bool pass = true;
    double worst_violation = 0.0; // largest signed breach beyond the slack
    std::size_t index = 0;        // record index where it happened
    double slack = 0.0;
};

// Scans consecutive records; passes iff every signed increment respects the
// direction up to the slack.
MonotoneVerdict audit_monotone(const std::vector<DiagnosticsRecord>& trace, TraceField field,
                               Direction direction, double slack);

struct ConvergenceCertificate {
    double s_star = 0.0; // mean of the final radii
    double osc = 0.0;
    double speed_max = 0.0;
    double area_residual = 0.0;   // |area(final) - A(s*)| / A(s*)
    double wvol_residual = 0.0;   // |wvol(final) - W(s*)| / W(s*)
    double q_residual = 0.0;      // |Q(final) - Q(s*)| / |Q(s*)|
    bool converged = false;
};

ConvergenceCertificate certify_convergence(const std::vector<DiagnosticsRecord>& trace,
                                           const GraphSurface& final_surface,
                                           double stop_speed_tol, double stop_osc_tol);

// Observed order p = log2(|v_N - v_2N| / |v_2N - v_4N|) from a three-level
// refinement ladder.
double refinement_order(double v_coarse, double v_mid, double v_fine);

} // namespace cicf
