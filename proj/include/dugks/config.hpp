#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "dugks/benchmarks.hpp"
#include "dugks/solver.hpp"

namespace dugks {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Preset { DugksI, DugksII, DugksAC, Custom };

// A fully resolved run description: solver preset, benchmark geometry,
// run length and output options. Built from flat "key = value" config
// text with '#' comments; every key can also be overridden through the
// DUGKS_<KEY> environment variables or command-line --key flags.
struct RunSpec {
    Preset preset = Preset::DugksI;
    std::optional<KineticVariant> variant_override;  // custom preset only
    std::optional<FluxMode> flux_override;           // custom preset only
    FaceScheme face_scheme{};
    GradientScheme gradient_scheme = GradientScheme::Isotropic;

    std::optional<BenchmarkKind> benchmark;
    double l0 = 0.0;          // 0 = per-benchmark default
    double u0 = 0.02;
    double pe = 60.0;
    double width = 4.0;
    std::optional<double> cn; // fixed Cahn number: overrides width = cn * l0
    double chi = 0.5;
    int n_vortex = 8;
    double periods = 0.0;     // 0 = per-benchmark default
    bool lag_dt_phiu = true;
    double normal_eps = 1e-12;

    std::filesystem::path out_dir = "out";
    long snapshot_cadence = 0;  // steps between full snapshots; 0 = ends only
    long diag_cadence = 100;    // steps between mass/extrema rows
    bool contours = true;       // contour CSV at period boundaries

    // Derived accessors (valid once validated).
    BenchmarkCase make_case() const;
    SolverConfig make_solver_config() const;
    double resolved_l0() const;
    double resolved_width() const;
    double resolved_periods() const;
    std::string describe() const;
};

// Parses config text; unknown keys, malformed lines and out-of-range
// values raise ConfigError with the offending line number. The returned
// spec is fully validated (including the mandatory benchmark key).
RunSpec parse_config(std::istream& text);
RunSpec parse_config_string(const std::string& text);
RunSpec parse_config_file(const std::filesystem::path& path);

// Applies DUGKS_<KEY> environment overrides, then explicit key=value
// overrides (e.g. from command-line flags), then validates.
void apply_overrides(RunSpec& spec,
                     const std::map<std::string, std::string>& overrides);

// Assigns a single key; throws ConfigError on unknown key or bad value.
void set_key(RunSpec& spec, const std::string& key, const std::string& value,
             int line_no = 0);

// Final validation used by all entry points.
void validate(const RunSpec& spec);

// Names of every recognized config key, for CLI flag generation.
const std::vector<std::string>& config_keys();

std::string to_string(Preset p);
std::string to_string(BenchmarkKind k);
std::string to_string(FaceSchemeKind k);

} // namespace dugks
