#include "cicf/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "cicf/config.hpp"
#include "cicf/monitors.hpp"

namespace cicf {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

struct AuditEntry {
    std::string name;
    bool pass = true;
    double worst_violation = 0.0;
    double slack = 0.0;
    std::string notes;
};

json audit_to_json(const AuditEntry& a) {
    return json{{"name", a.name},
                {"pass", a.pass},
                {"worst_violation", a.worst_violation},
                {"slack", a.slack},
                {"notes", a.notes}};
}

json inequalities_to_json(const std::vector<InequalityLine>& lines) {
    json arr = json::array();
    for (const auto& l : lines)
        arr.push_back(json{{"name", l.name},
                           {"lhs", l.lhs},
                           {"rhs", l.rhs},
                           {"gap", l.gap},
                           {"applicable", l.applicable},
                           {"hypothesis_notes", l.hypothesis_notes}});
    return arr;
}

// Applicable inequality lines must not undershoot by more than the slack.
bool inequalities_pass(const GraphSurface& surface, const std::vector<InequalityLine>& lines,
                       std::string& why) {
    for (const auto& l : lines) {
        if (!l.applicable)
            continue;
        const double slack = inequality_slack(surface, l.lhs);
        if (l.gap < -slack) {
            why = l.name + " gap " + format_double(l.gap) + " below -" + format_double(slack);
            return false;
        }
    }
    return true;
}

void write_trace_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "time,area,weighted_volume,weighted_area,Q,F_max,F_min,grad_max,A_norm_max,"
           "kappa_min,speed_max,minkowski_residual,hk_deficit\n";
    for (const auto& r : trace) {
        out << format_double(r.time) << ',' << format_double(r.area) << ','
            << format_double(r.weighted_volume) << ',' << format_double(r.weighted_area) << ','
            << format_double(r.q) << ',' << format_double(r.f_max) << ','
            << format_double(r.f_min) << ',' << format_double(r.grad_max) << ','
            << format_double(r.a_norm_max) << ',' << format_double(r.kappa_min) << ','
            << format_double(r.speed_max) << ',' << format_double(r.minkowski_residual) << ','
            << format_double(r.hk_deficit) << '\n';
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    fs::create_directories(dir);
    return dir;
}

// Identity scales against which the discrete residuals are judged.
struct IdentityCheck {
    double minkowski = 0.0, minkowski_scale = 0.0, minkowski_threshold = 0.0;
    double sigma2 = 0.0, sigma2_scale = 0.0, sigma2_threshold = 0.0;
    bool pass = true;
};

IdentityCheck identity_check(const GraphSurface& surface, const CurvatureField& field) {
    const Grid& g = *surface.grid;
    const KinematicsField& kin = field.kin;
    IdentityCheck c;
    c.minkowski = minkowski_residual(surface, field);
    c.sigma2 = sigma2_identity_residual(surface, field);
    double mscale = 0.0, sscale = 0.0;
    for (int i = 0; i < g.N; ++i) {
        double lam_n = 1.0;
        for (int p = 0; p < g.n; ++p)
            lam_n *= kin.lambda[i];
        const double dmu = g.quad_weights[i] * kin.v[i] * lam_n;
        mscale += dmu * (g.n * kin.dlambda[i] + std::abs(field.H[i]) * kin.u[i]);
        sscale += dmu * ((g.n - 1) * std::abs(field.H[i]) * kin.dlambda[i] +
                         2.0 * std::abs(field.sigma2[i]) * kin.u[i]);
    }
    c.minkowski_scale = mscale;
    c.sigma2_scale = sscale;
    const double h2 = g.dtheta * g.dtheta;
    c.minkowski_threshold = std::max(1e-9, 10.0 * h2 * mscale);
    c.sigma2_threshold = std::max(1e-9, 10.0 * h2 * sscale);
    c.pass = std::abs(c.minkowski) <= c.minkowski_threshold &&
             std::abs(c.sigma2) <= c.sigma2_threshold;
    return c;
}

json record_to_json(const DiagnosticsRecord& r) {
    return json{{"time", r.time},
                {"area", r.area},
                {"weighted_volume", r.weighted_volume},
                {"weighted_area", r.weighted_area},
                {"Q", r.q},
                {"F_max", r.f_max},
                {"F_min", r.f_min},
                {"grad_max", r.grad_max},
                {"A_norm_max", r.a_norm_max},
                {"kappa_min", r.kappa_min},
                {"speed_max", r.speed_max},
                {"minkowski_residual", r.minkowski_residual},
                {"hk_deficit", std::isfinite(r.hk_deficit) ? json(r.hk_deficit) : json()}};
}

int runtime_error_exit(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
}

int config_error_exit(const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 4;
}

} // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        if (!cfg.has_flow)
            throw ConfigError(config_path + ": run requires a [flow] section");
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    }

    try {
        const fs::path dir = prepare_out_dir(out_dir);
        const WarpModel model = build_model(cfg);
        const Grid grid = make_grid(cfg.grid_n, cfg.n);
        const GraphSurface initial = build_initial_surface(cfg, model, grid);

        const EvolveResult result = evolve(initial, cfg.flow);
        write_trace_csv(dir / cfg.trace_csv, result.trace);

        const ConvergenceCertificate cert =
            certify_convergence(result.trace, result.final_surface, cfg.flow.stop_speed_tol,
                                cfg.flow.stop_osc_tol);

        // Monotonicity audits, gated by the hypotheses under which they are
        // theorems: weighted volume always, area and Q on lambda'' >= 0
        // models, Q additionally only for the mean-curvature speed, strict
        // convexity on the spherical cap.
        std::vector<AuditEntry> audits;
        const double rel = 1e-6;
        auto add_monotone = [&](TraceField f, Direction dgn, const std::string& name) {
            const double scale = std::abs(trace_value(result.trace.front(), f));
            const double slack = rel * std::max(scale, 1e-12);
            const MonotoneVerdict v = audit_monotone(result.trace, f, dgn, slack);
            audits.push_back({name, v.pass, v.worst_violation, v.slack,
                              v.pass ? "" : "violated at record " + std::to_string(v.index)});
        };
        add_monotone(TraceField::WeightedVolume, Direction::NonDecreasing,
                     "weighted_volume_nondecreasing");
        if (has_nonnegative_radial_convexity(model)) {
            add_monotone(TraceField::Area, Direction::NonDecreasing, "area_nondecreasing");
            if (cfg.flow.k == 1)
                add_monotone(TraceField::Q, Direction::NonIncreasing, "q_nonincreasing");
        }
        if (model.kind == ModelKind::SphericalCap) {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& rec : result.trace)
                worst = std::min(worst, rec.kappa_min);
            audits.push_back({"kappa_min_positive", worst > 0.0, worst > 0.0 ? 0.0 : -worst, 0.0,
                              "min over trace = " + format_double(worst)});
        }
        audits.push_back({"converged", cert.converged,
                          cert.converged ? 0.0 : std::max(cert.osc, cert.speed_max), 0.0,
                          "osc = " + format_double(cert.osc) +
                              ", speed_max = " + format_double(cert.speed_max)});

        const SliceProfile profile = build_profile(cfg, model, result.final_surface);
        const auto inequalities = inequality_report(result.final_surface, profile);
        std::string ineq_why;
        const bool ineq_ok = inequalities_pass(result.final_surface, inequalities, ineq_why);
        if (!ineq_ok)
            audits.push_back({"inequalities", false, 0.0, 0.0, ineq_why});

        bool all_pass = ineq_ok;
        for (const auto& a : audits)
            all_pass = all_pass && a.pass;

        json jaudits = json::array();
        for (const auto& a : audits)
            jaudits.push_back(audit_to_json(a));

        const DiagnosticsRecord& first = result.trace.front();
        json summary{
            {"config", config_path},
            {"converged", cert.converged},
            {"stop_reason", result.stop_reason == StopReason::Converged
                                ? "converged"
                                : (result.stop_reason == StopReason::TimeEnd ? "t_end"
                                                                             : "max_steps")},
            {"steps", result.steps},
            {"s_star", cert.s_star},
            {"certification",
             {{"osc", cert.osc},
              {"speed_max", cert.speed_max},
              {"area_residual", cert.area_residual},
              {"weighted_volume_residual", cert.wvol_residual},
              {"q_residual", cert.q_residual}}},
            {"audits", jaudits},
            {"inequalities", inequalities_to_json(inequalities)},
            {"initial", record_to_json(result.trace.front())},
            {"final", record_to_json(result.trace.back())},
            // A-priori monitors are logged, never asserted.
            {"monitor_bounds",
             {{"F_max", {{"initial", first.f_max}, {"sup", [&] {
                              double s = first.f_max;
                              for (const auto& rec : result.trace)
                                  s = std::max(s, rec.f_max);
                              return s;
                          }()}}},
              {"grad_max", {{"initial", first.grad_max}, {"sup", [&] {
                                 double s = first.grad_max;
                                 for (const auto& rec : result.trace)
                                     s = std::max(s, rec.grad_max);
                                 return s;
                             }()}}},
              {"A_norm_max", {{"initial", first.a_norm_max}, {"sup", [&] {
                                   double s = first.a_norm_max;
                                   for (const auto& rec : result.trace)
                                       s = std::max(s, rec.a_norm_max);
                                   return s;
                               }()}}},
              {"F_min", {{"initial", first.f_min}, {"inf", [&] {
                              double s = first.f_min;
                              for (const auto& rec : result.trace)
                                  s = std::min(s, rec.f_min);
                              return s;
                          }()}}}}},
            {"pass", all_pass},
        };
        write_json(dir / cfg.summary_json, summary);

        return all_pass ? 0 : 2;
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    } catch (const std::exception& e) {
        return runtime_error_exit(e);
    }
}

int cmd_check(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    }

    try {
        const fs::path dir = prepare_out_dir(out_dir);
        const WarpModel model = build_model(cfg);
        const Grid grid = make_grid(cfg.grid_n, cfg.n);
        const GraphSurface surface = build_initial_surface(cfg, model, grid);
        const int k = cfg.has_flow ? cfg.flow.k : 1;

        const CurvatureField field = curvature_field(surface, k);
        const DiagnosticsRecord rec = make_diagnostics(surface, k, 0.0);
        const IdentityCheck ids = identity_check(surface, field);
        const SliceProfile profile = build_profile(cfg, model, surface);
        const auto inequalities = inequality_report(surface, profile);
        std::string ineq_why;
        const bool ineq_ok = inequalities_pass(surface, inequalities, ineq_why);
        const bool pass = ids.pass && ineq_ok;

        json report{
            {"config", config_path},
            {"diagnostics", record_to_json(rec)},
            {"horoconvexity_margin", horoconvexity_margin(field)},
            {"identities",
             {{"minkowski_residual", ids.minkowski},
              {"minkowski_threshold", ids.minkowski_threshold},
              {"sigma2_identity_residual", ids.sigma2},
              {"sigma2_threshold", ids.sigma2_threshold},
              {"pass", ids.pass}}},
            {"inequalities", inequalities_to_json(inequalities)},
            {"pass", pass},
        };
        if (!ineq_ok)
            report["inequality_failure"] = ineq_why;
        write_json(dir / cfg.report_json, report);

        return pass ? 0 : 2;
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    } catch (const std::exception& e) {
        return runtime_error_exit(e);
    }
}

int cmd_slice_profile(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    }

    try {
        const fs::path dir = prepare_out_dir(out_dir);
        const WarpModel model = build_model(cfg);
        const Grid grid = make_grid(cfg.grid_n, cfg.n);
        const GraphSurface surface = build_initial_surface(cfg, model, grid);
        const SliceProfile profile = build_profile(cfg, model, surface);

        std::ofstream out(dir / cfg.profile_csv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write profile CSV");
        out << "s,A,W,Q,xi1_roundtrip,xi0_roundtrip\n";
        double worst = 0.0;
        for (std::size_t j = 0; j < profile.s.size(); ++j) {
            const double rt1 = profile.Q[j] - xi1(profile, profile.A[j]);
            const double rt0 = profile.Q[j] - xi0(profile, profile.W[j]);
            worst = std::max({worst, std::abs(rt1), std::abs(rt0)});
            out << format_double(profile.s[j]) << ',' << format_double(profile.A[j]) << ','
                << format_double(profile.W[j]) << ',' << format_double(profile.Q[j]) << ','
                << format_double(rt1) << ',' << format_double(rt0) << '\n';
        }
        return worst <= 1e-8 ? 0 : 2;
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    } catch (const std::exception& e) {
        return runtime_error_exit(e);
    }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        if (cfg.sweep_mode == "run" && !cfg.has_flow)
            throw ConfigError(config_path + ": sweep mode 'run' requires a [flow] section");
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    }

    try {
        const fs::path dir = prepare_out_dir(out_dir);
        const WarpModel model = build_model(cfg);

        std::vector<int> ladder{cfg.grid_n, 2 * cfg.grid_n, 4 * cfg.grid_n};
        std::vector<double> mink, s2, s_star;
        for (int N : ladder) {
            const Grid grid = make_grid(N, cfg.n);
            GraphSurface surface = build_initial_surface(cfg, model, grid);
            if (cfg.sweep_mode == "run") {
                const EvolveResult res = evolve(surface, cfg.flow);
                surface = res.final_surface;
                s_star.push_back(std::accumulate(surface.r.begin(), surface.r.end(), 0.0) /
                                 double(surface.r.size()));
            }
            const CurvatureField field = curvature_field(surface);
            mink.push_back(minkowski_residual(surface, field));
            s2.push_back(sigma2_identity_residual(surface, field));
        }

        json orders;
        orders["minkowski_order"] = refinement_order(mink[0], mink[1], mink[2]);
        orders["sigma2_order"] = refinement_order(s2[0], s2[1], s2[2]);
        if (cfg.sweep_mode == "run")
            orders["s_star_order"] = refinement_order(s_star[0], s_star[1], s_star[2]);

        json out{
            {"config", config_path},
            {"mode", cfg.sweep_mode},
            {"N", ladder},
            {"minkowski_residual", mink},
            {"sigma2_identity_residual", s2},
            {"orders", orders},
        };
        if (cfg.sweep_mode == "run")
            out["s_star"] = s_star;

        // In run mode the gate is the converged radius: identity residuals
        // on near-slice finals sit at the noise floor and carry no order.
        bool pass = true;
        if (cfg.sweep_min_order) {
            const double want = *cfg.sweep_min_order;
            if (cfg.sweep_mode == "run")
                pass = orders["s_star_order"].get<double>() >= want;
            else
                pass = orders["minkowski_order"].get<double>() >= want &&
                       orders["sigma2_order"].get<double>() >= want;
            out["min_order"] = want;
        }
        out["pass"] = pass;
        write_json(dir / "sweep.json", out);

        std::cout << "minkowski order " << format_double(orders["minkowski_order"].get<double>())
                  << ", sigma2 order " << format_double(orders["sigma2_order"].get<double>());
        if (cfg.sweep_mode == "run")
            std::cout << ", s_star order " << format_double(orders["s_star_order"].get<double>());
        std::cout << '\n';

        return pass ? 0 : 2;
    } catch (const ConfigError& e) {
        return config_error_exit(e);
    } catch (const std::exception& e) {
        return runtime_error_exit(e);
    }
}

} // namespace cicf
