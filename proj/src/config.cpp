#include "dugks/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dugks {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    if (line_no > 0)
        throw ConfigError("config line " + std::to_string(line_no) + ": " + msg);
    throw ConfigError("config: " + msg);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        fail(line, "invalid number '" + v + "' for key '" + key + "'");
    }
}

long parse_long(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        fail(line, "invalid integer '" + v + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    fail(line, "invalid boolean '" + v + "' for key '" + key + "'");
}

} // namespace

std::string to_string(Preset p) {
    switch (p) {
        case Preset::DugksI: return "dugks-i";
        case Preset::DugksII: return "dugks-ii";
        case Preset::DugksAC: return "dugks-ac";
        case Preset::Custom: return "custom";
    }
    return "?";
}

std::string to_string(BenchmarkKind k) {
    switch (k) {
        case BenchmarkKind::Translation: return "translation";
        case BenchmarkKind::Zalesak: return "zalesak";
        case BenchmarkKind::Vortex: return "vortex";
    }
    return "?";
}

std::string to_string(FaceSchemeKind k) {
    switch (k) {
        case FaceSchemeKind::CDI2: return "cdi2";
        case FaceSchemeKind::CDI4: return "cdi4";
        case FaceSchemeKind::WenoZ3: return "weno-z3";
        case FaceSchemeKind::WenoZ5: return "weno-z5";
    }
    return "?";
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "benchmark", "preset",   "variant",   "flux",        "scheme",
        "gradient",  "l0",       "u0",        "pe",          "w",
        "cn",        "chi",      "n_vortex",  "periods",     "weno_eps",
        "weno_p",    "lag_dt_phiu", "normal_eps", "out_dir",
        "snapshot_cadence", "diag_cadence", "contours"};
    return keys;
}

void set_key(RunSpec& spec, const std::string& raw_key, const std::string& raw_value,
             int line) {
    const std::string key = lower(trim(raw_key));
    const std::string value = trim(raw_value);
    const std::string lv = lower(value);

    if (key == "benchmark") {
        if (lv == "translation") spec.benchmark = BenchmarkKind::Translation;
        else if (lv == "zalesak") spec.benchmark = BenchmarkKind::Zalesak;
        else if (lv == "vortex") spec.benchmark = BenchmarkKind::Vortex;
        else fail(line, "unknown benchmark '" + value + "'");
    } else if (key == "preset") {
        if (lv == "dugks-i") spec.preset = Preset::DugksI;
        else if (lv == "dugks-ii") spec.preset = Preset::DugksII;
        else if (lv == "dugks-ac") spec.preset = Preset::DugksAC;
        else if (lv == "custom") spec.preset = Preset::Custom;
        else fail(line, "unknown preset '" + value + "'");
    } else if (key == "variant") {
        if (lv == "a") spec.variant_override = KineticVariant::A;
        else if (lv == "b") spec.variant_override = KineticVariant::B;
        else fail(line, "unknown kinetic variant '" + value + "'");
    } else if (key == "flux") {
        if (lv == "linear") spec.flux_override = FluxMode::Linear;
        else if (lv == "parabolic") spec.flux_override = FluxMode::Parabolic;
        else fail(line, "unknown flux mode '" + value + "'");
    } else if (key == "scheme") {
        if (lv == "cdi2") spec.face_scheme.kind = FaceSchemeKind::CDI2;
        else if (lv == "cdi4") spec.face_scheme.kind = FaceSchemeKind::CDI4;
        else if (lv == "weno-z3" || lv == "wenoz3") spec.face_scheme.kind = FaceSchemeKind::WenoZ3;
        else if (lv == "weno-z5" || lv == "wenoz5") spec.face_scheme.kind = FaceSchemeKind::WenoZ5;
        else fail(line, "unknown face scheme '" + value + "'");
    } else if (key == "gradient") {
        if (lv == "isotropic") spec.gradient_scheme = GradientScheme::Isotropic;
        else if (lv == "central") spec.gradient_scheme = GradientScheme::Central;
        else fail(line, "unknown gradient scheme '" + value + "'");
    } else if (key == "l0") {
        spec.l0 = parse_double(value, key, line);
        if (!(spec.l0 > 0.0)) fail(line, "l0 must be positive");
    } else if (key == "u0") {
        spec.u0 = parse_double(value, key, line);
        if (!(spec.u0 > 0.0)) fail(line, "u0 must be positive");
    } else if (key == "pe") {
        spec.pe = parse_double(value, key, line);
        if (!(spec.pe > 0.0)) fail(line, "pe must be positive");
    } else if (key == "w") {
        spec.width = parse_double(value, key, line);
        if (!(spec.width > 0.0)) fail(line, "w must be positive");
    } else if (key == "cn") {
        const double cn = parse_double(value, key, line);
        if (!(cn > 0.0)) fail(line, "cn must be positive");
        spec.cn = cn;
    } else if (key == "chi") {
        spec.chi = parse_double(value, key, line);
        if (!(spec.chi > 0.0) || spec.chi > 1.0)
            fail(line, "chi must lie in (0, 1]");
    } else if (key == "n_vortex") {
        const long n = parse_long(value, key, line);
        if (n < 1) fail(line, "n_vortex must be at least 1");
        spec.n_vortex = int(n);
    } else if (key == "periods") {
        spec.periods = parse_double(value, key, line);
        if (!(spec.periods > 0.0)) fail(line, "periods must be positive");
    } else if (key == "weno_eps") {
        spec.face_scheme.weno_eps = parse_double(value, key, line);
        if (!(spec.face_scheme.weno_eps > 0.0)) fail(line, "weno_eps must be positive");
    } else if (key == "weno_p") {
        const long p = parse_long(value, key, line);
        if (p < 1) fail(line, "weno_p must be at least 1");
        spec.face_scheme.weno_p = int(p);
    } else if (key == "lag_dt_phiu") {
        spec.lag_dt_phiu = parse_bool(value, key, line);
    } else if (key == "normal_eps") {
        spec.normal_eps = parse_double(value, key, line);
        if (spec.normal_eps < 0.0) fail(line, "normal_eps must be non-negative");
    } else if (key == "out_dir") {
        if (value.empty()) fail(line, "out_dir must not be empty");
        spec.out_dir = value;
    } else if (key == "snapshot_cadence") {
        const long n = parse_long(value, key, line);
        if (n < 0) fail(line, "snapshot_cadence must be non-negative");
        spec.snapshot_cadence = n;
    } else if (key == "diag_cadence") {
        const long n = parse_long(value, key, line);
        if (n < 1) fail(line, "diag_cadence must be at least 1");
        spec.diag_cadence = n;
    } else if (key == "contours") {
        spec.contours = parse_bool(value, key, line);
    } else {
        fail(line, "unknown key '" + raw_key + "'");
    }
}

RunSpec parse_config(std::istream& text) {
    RunSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value', got '" + body + "'");
        set_key(spec, body.substr(0, eq), body.substr(eq + 1), line_no);
    }
    apply_overrides(spec, {});
    return spec;
}

RunSpec parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunSpec parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

void apply_overrides(RunSpec& spec,
                     const std::map<std::string, std::string>& overrides) {
    for (const std::string& key : config_keys()) {
        std::string env_name = "DUGKS_" + key;
        std::transform(env_name.begin(), env_name.end(), env_name.begin(),
                       [](unsigned char c) { return std::toupper(c); });
        if (const char* v = std::getenv(env_name.c_str())) set_key(spec, key, v);
    }
    for (const auto& [key, value] : overrides) set_key(spec, key, value);
    validate(spec);
}

void validate(const RunSpec& spec) {
    if (!spec.benchmark) throw ConfigError("config: benchmark required");
    if (spec.preset == Preset::Custom) {
        if (!spec.variant_override || !spec.flux_override)
            throw ConfigError(
                "config: preset 'custom' requires both 'variant' and 'flux'");
    } else if (spec.variant_override || spec.flux_override) {
        throw ConfigError(
            "config: 'variant'/'flux' only apply to preset 'custom' (got preset '" +
            to_string(spec.preset) + "')");
    }
    const double l0 = spec.resolved_l0();
    if (l0 < 5.0 || l0 != std::floor(l0))
        throw ConfigError("config: l0 must be an integer cell count of at least 5");
    // Grid2D and derived_timestep re-validate their own invariants.
    spec.make_solver_config();
}

double RunSpec::resolved_l0() const {
    if (l0 > 0.0) return l0;
    return (benchmark && *benchmark == BenchmarkKind::Translation) ? 100.0 : 200.0;
}

double RunSpec::resolved_width() const {
    return cn ? *cn * resolved_l0() : width;
}

double RunSpec::resolved_periods() const {
    if (periods > 0.0) return periods;
    return (benchmark && *benchmark == BenchmarkKind::Translation) ? 10.0 : 1.0;
}

BenchmarkCase RunSpec::make_case() const {
    const double domain = resolved_l0();
    switch (benchmark.value()) {
        case BenchmarkKind::Translation: return translation_case(domain, u0);
        case BenchmarkKind::Zalesak: return zalesak_case(domain, u0);
        case BenchmarkKind::Vortex: return vortex_case(domain, u0, n_vortex);
    }
    throw ConfigError("config: benchmark required");
}

SolverConfig RunSpec::make_solver_config() const {
    SolverConfig cfg;
    const int n = int(resolved_l0());
    cfg.grid = Grid2D(n, n, 1.0);
    switch (preset) {
        case Preset::DugksI:
            cfg.variant = KineticVariant::A;
            cfg.flux_mode = FluxMode::Parabolic;
            break;
        case Preset::DugksII:
            cfg.variant = KineticVariant::B;
            cfg.flux_mode = FluxMode::Parabolic;
            break;
        case Preset::DugksAC:
            cfg.variant = KineticVariant::B;
            cfg.flux_mode = FluxMode::Linear;
            break;
        case Preset::Custom:
            cfg.variant = variant_override.value();
            cfg.flux_mode = flux_override.value();
            break;
    }
    cfg.face_scheme = face_scheme;
    cfg.gradient_scheme = gradient_scheme;
    cfg.width = resolved_width();
    cfg.pe = pe;
    cfg.u0 = u0;
    cfg.chi = chi;
    cfg.normal_eps = normal_eps;
    cfg.lag_dt_phiu = lag_dt_phiu;
    return cfg;
}

std::string RunSpec::describe() const {
    std::ostringstream out;
    out << "preset = " << to_string(preset) << '\n';
    if (preset == Preset::Custom) {
        out << "variant = "
            << (variant_override.value() == KineticVariant::A ? "a" : "b") << '\n';
        out << "flux = "
            << (flux_override.value() == FluxMode::Linear ? "linear" : "parabolic")
            << '\n';
    }
    out << "benchmark = " << to_string(benchmark.value()) << '\n';
    out << "scheme = " << to_string(face_scheme.kind) << '\n';
    out << "gradient = "
        << (gradient_scheme == GradientScheme::Isotropic ? "isotropic" : "central")
        << '\n';
    out << "l0 = " << resolved_l0() << '\n';
    out << "u0 = " << u0 << '\n';
    out << "pe = " << pe << '\n';
    out << "w = " << resolved_width() << '\n';
    out << "chi = " << chi << '\n';
    out << "periods = " << resolved_periods() << '\n';
    if (benchmark && *benchmark == BenchmarkKind::Vortex)
        out << "n_vortex = " << n_vortex << '\n';
    return out.str();
}

} // namespace dugks
