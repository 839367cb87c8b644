#include "cicf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cicf/initdata.hpp"

namespace cicf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap tokenize(const std::string& text, const std::string& origin) {
    SectionMap sections;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            sections[section]; // section may legitimately stay empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (sections[section].count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                              "'");
        sections[section][key] = value;
    }
    return sections;
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"ambient", {"kind", "n", "m", "r_max"}},
    {"grid", {"N"}},
    {"flow", {"k", "cfl", "t_end", "stop_speed_tol", "stop_osc_tol", "max_steps", "record_every"}},
    {"init", {"kind", "s", "amplitude", "mode", "rho", "d"}},
    {"profile", {"s_min", "s_max", "samples"}},
    {"output", {"trace_csv", "summary_json", "report_json", "profile_csv"}},
    {"sweep", {"mode", "min_order"}},
};

void check_schema(const SectionMap& sections, const std::string& origin) {
    for (const auto& [section, keys] : sections) {
        const auto it = kSchema.find(section);
        if (it == kSchema.end())
            throw ConfigError(origin + ": unknown section [" + section + "]");
        for (const auto& [key, value] : keys)
            if (!it->second.count(key))
                throw ConfigError(origin + ": unknown key '" + key + "' in [" + section + "]");
    }
}

class Reader {
  public:
    Reader(const SectionMap& sections, const std::string& origin)
        : sections_(sections), origin_(origin) {}

    bool has(const std::string& section, const std::string& key) const {
        const auto it = sections_.find(section);
        return it != sections_.end() && it->second.count(key);
    }

    std::string str(const std::string& section, const std::string& key) const {
        const auto it = sections_.find(section);
        if (it == sections_.end() || !it->second.count(key))
            throw ConfigError(origin_ + ": missing required key '" + key + "' in [" + section +
                              "]");
        return it->second.at(key);
    }

    double real(const std::string& section, const std::string& key) const {
        const std::string v = str(section, key);
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size() || !std::isfinite(x))
                throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "' in [" + section +
                              "] is not a finite number: '" + v + "'");
        }
    }

    long integer(const std::string& section, const std::string& key) const {
        const std::string v = str(section, key);
        try {
            std::size_t pos = 0;
            const long x = std::stol(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "' in [" + section +
                              "] is not an integer: '" + v + "'");
        }
    }

    double real_or(const std::string& section, const std::string& key, double fallback) const {
        return has(section, key) ? real(section, key) : fallback;
    }
    long integer_or(const std::string& section, const std::string& key, long fallback) const {
        return has(section, key) ? integer(section, key) : fallback;
    }
    std::string str_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const {
        return has(section, key) ? str(section, key) : fallback;
    }

  private:
    const SectionMap& sections_;
    const std::string& origin_;
};

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    const SectionMap sections = tokenize(text, origin);
    check_schema(sections, origin);
    const Reader rd(sections, origin);

    ExperimentConfig cfg;

    const std::string kind = rd.str("ambient", "kind");
    if (kind == "spherical_cap")
        cfg.ambient_kind = ModelKind::SphericalCap;
    else if (kind == "hyperbolic")
        cfg.ambient_kind = ModelKind::Hyperbolic;
    else if (kind == "euclidean")
        cfg.ambient_kind = ModelKind::Euclidean;
    else if (kind == "ads_schwarzschild")
        cfg.ambient_kind = ModelKind::AdsSchwarzschild;
    else
        throw ConfigError(origin + ": unknown ambient kind '" + kind + "'");

    cfg.n = int(rd.integer("ambient", "n"));
    if (cfg.n < 1)
        throw ConfigError(origin + ": ambient n must be >= 1");
    if (cfg.ambient_kind == ModelKind::AdsSchwarzschild) {
        cfg.m = rd.real("ambient", "m");
        if (!(cfg.m > 0.0))
            throw ConfigError(origin + ": ads_schwarzschild needs m > 0");
        cfg.r_max = rd.real_or("ambient", "r_max", 5.0);
    } else if (rd.has("ambient", "m") || rd.has("ambient", "r_max")) {
        throw ConfigError(origin + ": m/r_max are only valid for ads_schwarzschild");
    }

    cfg.grid_n = int(rd.integer("grid", "N"));

    if (sections.count("flow")) {
        cfg.has_flow = true;
        cfg.flow.k = int(rd.integer("flow", "k"));
        cfg.flow.cfl = rd.real_or("flow", "cfl", 0.4);
        cfg.flow.t_end = rd.real_or("flow", "t_end", 1.0);
        cfg.flow.stop_speed_tol = rd.real_or("flow", "stop_speed_tol", 1e-8);
        cfg.flow.stop_osc_tol = rd.real_or("flow", "stop_osc_tol", 1e-6);
        cfg.flow.max_steps = rd.integer_or("flow", "max_steps", 5000000);
        cfg.flow.record_every = rd.integer_or("flow", "record_every", 100);
    }

    const std::string init = rd.str("init", "kind");
    if (init == "slice") {
        cfg.init_kind = InitKind::Slice;
        cfg.init_s = rd.real("init", "s");
    } else if (init == "perturbed_slice") {
        cfg.init_kind = InitKind::PerturbedSlice;
        cfg.init_s = rd.real("init", "s");
        cfg.init_amplitude = rd.real("init", "amplitude");
        cfg.init_mode = int(rd.integer("init", "mode"));
    } else if (init == "offcenter_sphere") {
        cfg.init_kind = InitKind::OffcenterSphere;
        cfg.init_rho = rd.real("init", "rho");
        cfg.init_d = rd.real("init", "d");
    } else {
        throw ConfigError(origin + ": unknown init kind '" + init + "'");
    }

    if (rd.has("profile", "s_min"))
        cfg.profile_s_min = rd.real("profile", "s_min");
    if (rd.has("profile", "s_max"))
        cfg.profile_s_max = rd.real("profile", "s_max");
    cfg.profile_samples = int(rd.integer_or("profile", "samples", 2048));

    cfg.trace_csv = rd.str_or("output", "trace_csv", cfg.trace_csv);
    cfg.summary_json = rd.str_or("output", "summary_json", cfg.summary_json);
    cfg.report_json = rd.str_or("output", "report_json", cfg.report_json);
    cfg.profile_csv = rd.str_or("output", "profile_csv", cfg.profile_csv);

    cfg.sweep_mode = rd.str_or("sweep", "mode", cfg.sweep_mode);
    if (cfg.sweep_mode != "check" && cfg.sweep_mode != "run")
        throw ConfigError(origin + ": sweep mode must be 'check' or 'run'");
    if (rd.has("sweep", "min_order"))
        cfg.sweep_min_order = rd.real("sweep", "min_order");

    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

WarpModel build_model(const ExperimentConfig& cfg) {
    switch (cfg.ambient_kind) {
    case ModelKind::SphericalCap: return make_spherical_cap(cfg.n);
    case ModelKind::Hyperbolic: return make_hyperbolic(cfg.n);
    case ModelKind::Euclidean: return make_euclidean(cfg.n);
    case ModelKind::AdsSchwarzschild: return make_ads_schwarzschild(cfg.n, cfg.m, cfg.r_max);
    }
    throw ConfigError("build_model: unknown ambient kind");
}

GraphSurface build_initial_surface(const ExperimentConfig& cfg, const WarpModel& model,
                                   const Grid& grid) {
    switch (cfg.init_kind) {
    case InitKind::Slice: return make_slice(model, grid, cfg.init_s);
    case InitKind::PerturbedSlice:
        return make_perturbed_slice(model, grid, cfg.init_s, cfg.init_amplitude, cfg.init_mode);
    case InitKind::OffcenterSphere:
        return make_offcenter_sphere(model, grid, cfg.init_rho, cfg.init_d);
    }
    throw ConfigError("build_initial_surface: unknown init kind");
}

SliceProfile build_profile(const ExperimentConfig& cfg, const WarpModel& model,
                           const GraphSurface& surface) {
    const auto [mn, mx] = std::minmax_element(surface.r.begin(), surface.r.end());
    const double rmin = *mn, rmax = *mx;
    const double span = std::max({rmax - rmin, 0.05 * rmax, 1e-3});
    double lo = cfg.profile_s_min.value_or(std::max(rmin - 2.0 * span, model.a + 0.1 * (rmin - model.a)));
    double hi;
    if (cfg.profile_s_max) {
        hi = *cfg.profile_s_max;
    } else if (std::isfinite(model.b)) {
        hi = std::min(rmax + 2.0 * span, model.a + 0.999 * (model.b - model.a));
    } else {
        hi = rmax + 2.0 * span;
    }
    if (!(lo < hi))
        throw ConfigError("profile ladder is empty; check s_min/s_max");
    return build_slice_profile(model, cfg.n, cfg.profile_samples, lo, hi);
}

} // namespace cicf
