#pragma once

#include <optional>
#include <string>

#include "cicf/flow.hpp"
#include "cicf/quantities.hpp"

namespace cicf {

// Flat structured-text experiment configuration. Sections and keys:
//
//   [ambient]  kind = spherical_cap | hyperbolic | euclidean | ads_schwarzschild
//              n = <int>            m = <real, ads only>   r_max = <real, ads only>
//   [grid]     N = <int >= 16>
//   [flow]     k, cfl, t_end, stop_speed_tol, stop_osc_tol, max_steps, record_every
//   [init]     kind = slice | perturbed_slice | offcenter_sphere
//              s, amplitude, mode (perturbed) / rho, d (offcenter)
//   [profile]  s_min, s_max, samples
//   [output]   trace_csv, summary_json, report_json, profile_csv
//   [sweep]    mode = check | run     min_order = <real>
//
// Unknown sections or keys are hard errors.

enum class InitKind { Slice, PerturbedSlice, OffcenterSphere };

struct ExperimentConfig {
    // [ambient]
    ModelKind ambient_kind = ModelKind::Hyperbolic;
    int n = 2;
    double m = 0.0;
    double r_max = 5.0;
    // [grid]
    int grid_n = 0;
    // [flow]
    FlowConfig flow;
    bool has_flow = false;
    // [init]
    InitKind init_kind = InitKind::Slice;
    double init_s = 0.0;
    double init_amplitude = 0.0;
    int init_mode = 1;
    double init_rho = 0.0;
    double init_d = 0.0;
    // [profile]
    std::optional<double> profile_s_min, profile_s_max;
    int profile_samples = 2048;
    // [output]
    std::string trace_csv = "trace.csv";
    std::string summary_json = "summary.json";
    std::string report_json = "report.json";
    std::string profile_csv = "slice_profile.csv";
    // [sweep]
    std::string sweep_mode = "check";
    std::optional<double> sweep_min_order;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Instantiation helpers shared by the commands.
WarpModel build_model(const ExperimentConfig& cfg);
GraphSurface build_initial_surface(const ExperimentConfig& cfg, const WarpModel& model,
                                   const Grid& grid);
SliceProfile build_profile(const ExperimentConfig& cfg, const WarpModel& model,
                           const GraphSurface& surface);

} // namespace cicf
