// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria marked with their tolerances; every threshold
// is pinned here, none is configurable.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cicf/commands.hpp"
#include "cicf/flow.hpp"
#include "cicf/initdata.hpp"
#include "cicf/monitors.hpp"
#include "cicf/quantities.hpp"
#include "cicf/symmetric.hpp"

using namespace cicf;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Criterion {
    std::string name;
    std::function<std::string()> run; // empty string = pass, else failure detail
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kReferenceRunConfig = R"([ambient]
kind = hyperbolic
n = 2

[grid]
N = 512

[flow]
k = 1
cfl = 0.55
t_end = 40.0
stop_speed_tol = 1e-8
stop_osc_tol = 1e-6
record_every = 100

[init]
kind = perturbed_slice
s = 1.0
amplitude = 0.1
mode = 2

[output]
trace_csv = trace.csv
summary_json = summary.json
)";

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "cicf_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::string check_le(double value, double bound, const std::string& what) {
    if (!(value <= bound)) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s = %.6g exceeds %.6g", what.c_str(), value, bound);
        return buf;
    }
    return "";
}

// ---- criterion 1: slice stationarity --------------------------------------

std::string criterion_slice_stationarity() {
    const WarpModel cap = make_spherical_cap(2);
    const WarpModel hyp = make_hyperbolic(2);
    const WarpModel euc = make_euclidean(2);
    const WarpModel ads = make_ads_schwarzschild(2, 1.0, 5.0);
    const Grid grid = make_grid(256, 2);

    struct Case {
        const WarpModel* w;
        double s;
        const char* label;
    };
    const Case cases[] = {{&cap, M_PI / 4.0, "spherical_cap"},
                          {&hyp, 1.0, "hyperbolic"},
                          {&euc, 2.0, "euclidean"},
                          {&ads, 1.0, "ads_schwarzschild"}};

    for (const Case& c : cases) {
        for (int k : {1, 2}) {
            FlowConfig cfg;
            cfg.k = k;
            cfg.cfl = 0.55;
            cfg.t_end = 1.0;
            cfg.stop_speed_tol = 1e-30; // never stop early
            cfg.stop_osc_tol = 1e-30;
            cfg.record_every = 500;
            const EvolveResult res = evolve(make_slice(*c.w, grid, c.s), cfg);
            double drift = 0.0;
            for (double r : res.final_surface.r)
                drift = std::max(drift, std::abs(r - c.s));
            double speed_sup = 0.0;
            for (const auto& rec : res.trace)
                speed_sup = std::max(speed_sup, rec.speed_max);
            const std::string who = std::string(c.label) + " k=" + std::to_string(k);
            if (auto e = check_le(drift, 1e-10, who + " max|r-s|"); !e.empty())
                return e;
            if (auto e = check_le(speed_sup, 1e-12, who + " speed_max"); !e.empty())
                return e;
        }
    }
    return "";
}

// ---- criterion 2: convergence with monotone trace -------------------------

std::string criterion_reference_convergence() {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "reference_run.cfg";
    {
        std::ofstream out(cfg);
        out << kReferenceRunConfig;
    }
    const fs::path out = dir / "c2";
    const int code = cmd_run(cfg.string(), out.string());
    if (code != 0)
        return "cmd_run exit code " + std::to_string(code);

    const json summary = json::parse(slurp(out / "summary.json"));
    if (!summary["converged"].get<bool>())
        return "not converged";
    if (summary["certification"]["osc"].get<double>() >= 1e-6)
        return "final oscillation above 1e-6";
    for (const auto& audit : summary["audits"]) {
        const std::string name = audit["name"].get<std::string>();
        if ((name == "weighted_volume_nondecreasing" || name == "area_nondecreasing" ||
             name == "q_nonincreasing") &&
            !audit["pass"].get<bool>())
            return "audit failed: " + name;
    }
    return "";
}

// ---- criterion 3: spherical convex case ------------------------------------

std::string criterion_spherical_convex() {
    const WarpModel cap = make_spherical_cap(2);
    const Grid grid = make_grid(512, 2);
    FlowConfig cfg;
    cfg.k = 2;
    cfg.cfl = 0.55;
    cfg.t_end = 40.0;
    cfg.stop_speed_tol = 1e-8;
    cfg.stop_osc_tol = 1e-6;
    cfg.record_every = 100;
    const EvolveResult res = evolve(make_perturbed_slice(cap, grid, M_PI / 4.0, 0.02, 2), cfg);
    if (res.stop_reason != StopReason::Converged)
        return "did not converge";
    if (oscillation(res.final_surface) >= 1e-6)
        return "oscillation above 1e-6";
    for (const auto& rec : res.trace)
        if (!(rec.kappa_min > 0.0))
            return "kappa_min <= 0 at t = " + std::to_string(rec.time);
    const double slack = 1e-6 * std::abs(res.trace.front().weighted_volume);
    if (!audit_monotone(res.trace, TraceField::WeightedVolume, Direction::NonDecreasing, slack)
             .pass)
        return "weighted volume not nondecreasing";
    return "";
}

// ---- criterion 4: equality cases -------------------------------------------

std::string criterion_equality_cases() {
    const WarpModel hyp = make_hyperbolic(2);
    const Grid grid = make_grid(1024, 2);
    const GraphSurface s = make_slice(hyp, grid, 1.0);
    const SliceProfile profile = build_slice_profile(hyp, 2, 2048, 0.05, 3.0);

    const double target = 8.0 * M_PI * std::sinh(1.0);
    bool saw_minkowski = false, saw_horo = false;
    for (const auto& line : inequality_report(s, profile)) {
        if (line.name == "hyperbolic_weighted_minkowski") {
            saw_minkowski = true;
            if (std::abs(line.lhs - target) / target > 1e-3)
                return "weighted Minkowski lhs off the slice value";
            if (std::abs(line.rhs - target) / target > 1e-3)
                return "weighted Minkowski rhs off the slice value";
            if (std::abs(line.gap) / line.rhs > 1e-3)
                return "weighted Minkowski equality gap above 1e-3 relative";
        }
        if (line.name == "horoconvex_weighted_area") {
            saw_horo = true;
            if (std::abs(line.gap) / line.rhs > 1e-3)
                return "horo-convex equality gap above 1e-3 relative";
        }
    }
    if (!saw_minkowski || !saw_horo)
        return "expected report lines missing";

    for (std::size_t j = 0; j < profile.s.size(); ++j) {
        if (std::abs(profile.Q[j] - xi1(profile, profile.A[j])) > 1e-8)
            return "xi1 round-trip above 1e-8 at ladder index " + std::to_string(j);
        if (std::abs(profile.Q[j] - xi0(profile, profile.W[j])) > 1e-8)
            return "xi0 round-trip above 1e-8 at ladder index " + std::to_string(j);
    }
    return "";
}

// ---- criterion 5: strict gaps ----------------------------------------------

std::string criterion_strict_gaps() {
    const WarpModel hyp = make_hyperbolic(2);
    const Grid grid = make_grid(1024, 2);
    const SliceProfile profile = build_slice_profile(hyp, 2, 2048, 0.05, 3.0);

    const GraphSurface surfaces[] = {make_offcenter_sphere(hyp, grid, 1.0, 0.3),
                                     make_perturbed_slice(hyp, grid, 1.0, 0.1, 2)};
    const char* labels[] = {"offcenter", "perturbed"};
    for (int which = 0; which < 2; ++which) {
        int strict = 0;
        for (const auto& line : inequality_report(surfaces[which], profile)) {
            if (line.name != "q_vs_xi1_area" && line.name != "q_vs_xi0_weighted_volume" &&
                line.name != "hyperbolic_weighted_minkowski" &&
                line.name != "horoconvex_weighted_area")
                continue;
            if (!line.applicable)
                return std::string(labels[which]) + ": " + line.name + " not applicable";
            const double slack = inequality_slack(surfaces[which], line.lhs);
            if (!(line.gap > 10.0 * slack))
                return std::string(labels[which]) + ": " + line.name + " gap " +
                       format_double(line.gap) + " not above 10x slack " + format_double(slack);
            ++strict;
        }
        if (strict != 4)
            return std::string(labels[which]) + ": expected 4 strict inequalities";
    }
    return "";
}

// ---- criterion 6: identity convergence -------------------------------------

std::string criterion_identity_convergence() {
    const WarpModel hyp = make_hyperbolic(2);
    std::vector<double> mink, s2;
    double area_finest = 0.0;
    for (int N : {256, 512, 1024}) {
        const Grid g = make_grid(N, 2);
        const GraphSurface s = make_perturbed_slice(hyp, g, 1.0, 0.1, 2);
        const CurvatureField f = curvature_field(s);
        mink.push_back(std::abs(minkowski_residual(s, f)));
        s2.push_back(std::abs(sigma2_identity_residual(s, f)));
        area_finest = area(s, f.kin);
    }
    const double p_mink = refinement_order(mink[0], mink[1], mink[2]);
    const double p_s2 = refinement_order(s2[0], s2[1], s2[2]);
    if (!(p_mink >= 1.8))
        return "Minkowski residual order " + format_double(p_mink) + " below 1.8";
    if (!(p_s2 >= 1.8))
        return "sigma2 identity order " + format_double(p_s2) + " below 1.8";
    if (auto e = check_le(mink[2], 1e-3 * area_finest, "Minkowski residual at N=1024");
        !e.empty())
        return e;
    if (auto e = check_le(s2[2], 1e-3 * area_finest, "sigma2 residual at N=1024"); !e.empty())
        return e;
    return "";
}

// ---- criterion 7: oracle curvature ------------------------------------------

std::string criterion_oracle_curvature() {
    struct Case {
        WarpModel w;
        double rho, d, constant;
        const char* label;
    };
    Case cases[] = {
        {make_hyperbolic(2), 1.0, 0.3, std::cosh(1.0) / std::sinh(1.0), "hyperbolic"},
        {make_spherical_cap(2), M_PI / 6.0, 0.1, std::cos(M_PI / 6.0) / std::sin(M_PI / 6.0),
         "spherical_cap"}};
    for (const Case& c : cases) {
        std::vector<double> errs;
        for (int N : {256, 512, 1024}) {
            const Grid g = make_grid(N, 2);
            const CurvatureField f = curvature_field(make_offcenter_sphere(c.w, g, c.rho, c.d));
            double worst = 0.0;
            for (int i = 0; i < g.N; ++i) {
                worst = std::max(worst, std::abs(f.kappa1[i] - c.constant));
                worst = std::max(worst, std::abs(f.kappa2[i] - c.constant));
            }
            errs.push_back(worst);
        }
        if (auto e = check_le(errs[2], 5e-5, std::string(c.label) + " umbilic error at N=1024");
            !e.empty())
            return e;
        const double order = refinement_order(errs[0], errs[1], errs[2]);
        if (!(order >= 1.8))
            return std::string(c.label) + " umbilic order " + format_double(order) +
                   " below 1.8";
    }
    return "";
}

// ---- criterion 8: symmetric-function property suite -------------------------

std::string criterion_symmetric_properties() {
    std::mt19937 gen(0xacce97u);
    auto uniform = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(gen);
    };
    int done = 0;
    while (done < 1000) {
        const int n = 2 + int(uniform(0.0, 5.0));
        const int k = 1 + int(uniform(0.0, double(n)));
        std::vector<double> kappa(n);
        for (auto& x : kappa)
            x = uniform(-0.5, 2.0);
        bool in_cone = true;
        const auto e = elementary_all(kappa);
        for (int j = 1; j <= k; ++j)
            in_cone = in_cone && e[j] > 1e-6;
        if (!in_cone)
            continue;
        ++done;

        const double hk = normalized_h_k(kappa, k);
        const double hkm1 = normalized_h_k(kappa, k - 1);
        if (k + 1 <= n) {
            const double hkp1 = normalized_h_k(kappa, k + 1);
            if (!(hkm1 * hkp1 <= hk * hk + 1e-12))
                return "Newton-MacLaurin violated";
        }
        const double f = double(n) * hk / hkm1;
        if (!(f <= e[1] + 1e-10))
            return "F <= sigma_1 violated";
        for (double t : {0.5, 2.0}) {
            std::vector<double> scaled = kappa;
            for (auto& x : scaled)
                x *= t;
            if (!(std::abs(speed_quotient(scaled, k) - t * speed_quotient(kappa, k)) <= 1e-12))
                return "homogeneity violated";
        }
    }
    return "";
}

// ---- criterion 9: AdS-Schwarzschild model fidelity ---------------------------

std::string criterion_ads_fidelity() {
    const double l0 = ads_horizon_lambda(2, 1.0);
    if (std::abs(l0 - 0.682328) > 1e-6)
        return "horizon value " + format_double(l0) + " off 0.682328 by more than 1e-6";

    const WarpModel tiny = make_ads_schwarzschild(2, 1e-11, 3.5);
    double worst = 0.0;
    for (double r = 0.1; r <= 3.0; r += 0.01)
        worst = std::max(worst, std::abs(eval(tiny, r).l - std::sinh(r)));
    if (auto e = check_le(worst, 1e-8, "m->0 deviation from sinh on [0.1,3]"); !e.empty())
        return e;

    const WarpModel ads = make_ads_schwarzschild(2, 1.0, 5.0);
    std::mt19937 gen(0xad5u);
    std::uniform_real_distribution<double> dist(1e-3, 5.0 - 1e-3);
    double worst_res = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Jet4 j = eval(ads, dist(gen));
        worst_res = std::max(worst_res, std::abs(j.l1 * j.l1 - (1.0 + j.l * j.l - 1.0 / j.l)));
    }
    return check_le(worst_res, 1e-8, "defining-relation residual");
}

// ---- criterion 10: determinism ----------------------------------------------

std::string criterion_determinism() {
    const fs::path dir = work_dir();
    const fs::path cfg = dir / "reference_run.cfg"; // written by criterion 2
    if (!fs::exists(cfg)) {
        std::ofstream out(cfg);
        out << kReferenceRunConfig;
    }
    const fs::path out1 = dir / "c10_a", out2 = dir / "c10_b";
    if (cmd_run(cfg.string(), out1.string()) != 0)
        return "first run failed";
    if (cmd_run(cfg.string(), out2.string()) != 0)
        return "second run failed";
    const std::string a = slurp(out1 / "trace.csv");
    const std::string b = slurp(out2 / "trace.csv");
    if (a.empty() || a != b)
        return "trace CSVs differ";
    return "";
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"slice stationarity across models and speeds", criterion_slice_stationarity},
        {"reference hyperbolic run converges with monotone functionals",
         criterion_reference_convergence},
        {"spherical convex case preserves convexity", criterion_spherical_convex},
        {"equality cases on the unit hyperbolic slice", criterion_equality_cases},
        {"strict inequality gaps off the equality case", criterion_strict_gaps},
        {"discrete identities converge at second order", criterion_identity_convergence},
        {"umbilic curvature oracle at 5e-5", criterion_oracle_curvature},
        {"Newton-MacLaurin and homogeneity property suite", criterion_symmetric_properties},
        {"AdS-Schwarzschild model fidelity", criterion_ads_fidelity},
        {"byte-identical repeated runs", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("PASS criterion %2zu: %s\n", i + 1, criteria[i].name.c_str());
        } else {
            std::printf("FAIL criterion %2zu: %s -- %s\n", i + 1, criteria[i].name.c_str(),
                        detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures)
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
