#include "dugks/runner.hpp"

#include <cmath>
#include <future>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dugks/io.hpp"

namespace dugks {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string time_tag(double t) {
    std::ostringstream out;
    out << t;
    return out.str();
}

// Writes the per-run artifact set.
class DiskObserver : public RunObserver {
public:
    DiskObserver(const RunSpec& spec) : spec_(spec) {
        namespace fs = std::filesystem;
        fs::create_directories(spec_.out_dir);
        mass_ = std::make_unique<CsvWriter>(spec_.out_dir / "mass.csv",
                                            std::vector<std::string>{"step", "mass"});
        extrema_ = std::make_unique<CsvWriter>(
            spec_.out_dir / "extrema.csv",
            std::vector<std::string>{"step", "min_phi", "max_phi"});
        errors_ = std::make_unique<CsvWriter>(
            spec_.out_dir / "errors.csv", std::vector<std::string>{"period", "l2"});
    }

    void start(const Solver& solver) override {
        phi0_ = solver.state().phi;
        write_scalar_snapshot(spec_.out_dir / "phi_step0.txt", phi0_, 0.0);
        if (spec_.contours)
            write_contour_csv(spec_.out_dir / "contour_t0.csv",
                              extract_contour(phi0_));
        sample(solver);
    }

    void sample(const Solver& solver) override {
        const SolverState& st = solver.state();
        mass_->row({std::to_string(st.step_count),
                    format_double(positive_mass(st.phi))});
        extrema_->row({std::to_string(st.step_count), format_double(st.phi_min),
                       format_double(st.phi_max)});
        if (spec_.snapshot_cadence > 0 && st.step_count > 0 &&
            st.step_count % spec_.snapshot_cadence == 0)
            snapshot(solver);
    }

    void period(int p, const Solver& solver) override {
        errors_->row({std::to_string(p),
                      format_double(l2_error(solver.state().phi, phi0_))});
        if (spec_.contours)
            write_contour_csv(
                spec_.out_dir / ("contour_t" + time_tag(solver.state().time) + ".csv"),
                extract_contour(solver.state().phi));
    }

    void finish(const Solver& solver) override {
        snapshot(solver);
    }

private:
    void snapshot(const Solver& solver) {
        const SolverState& st = solver.state();
        write_scalar_snapshot(
            spec_.out_dir / ("phi_step" + std::to_string(st.step_count) + ".txt"),
            st.phi, st.time);
    }

    const RunSpec& spec_;
    ScalarField phi0_;
    std::unique_ptr<CsvWriter> mass_, extrema_, errors_;
};

struct PresetDef {
    const char* name;
    Preset preset;
};

constexpr PresetDef kPresets[] = {
    {"dugks-ac", Preset::DugksAC},
    {"dugks-i", Preset::DugksI},
    {"dugks-ii", Preset::DugksII},
};

Preset preset_by_name(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return p.preset;
    throw ConfigError("unknown preset '" + name + "'");
}

RunSpec base_spec(Preset preset, BenchmarkKind bench) {
    RunSpec spec;
    spec.preset = preset;
    spec.benchmark = bench;
    return spec;
}

struct CellResult {
    RunMetrics metrics;
    bool failed = false;
};

CellResult run_cell(const RunSpec& spec) {
    CellResult r;
    r.metrics = simulate(spec);
    r.failed = r.metrics.diverged;
    return r;
}

std::vector<CellResult> run_cells(const std::vector<RunSpec>& specs,
                                  int parallel_jobs) {
    std::vector<CellResult> results(specs.size());
    if (parallel_jobs <= 1) {
        for (std::size_t k = 0; k < specs.size(); ++k)
            results[k] = run_cell(specs[k]);
        return results;
    }
#ifdef _OPENMP
    const int prev_threads = omp_get_max_threads();
    omp_set_num_threads(1);  // the cells themselves provide the parallelism
#endif
    std::size_t next = 0;
    while (next < specs.size()) {
        const std::size_t batch =
            std::min<std::size_t>(parallel_jobs, specs.size() - next);
        std::vector<std::future<CellResult>> futs;
        for (std::size_t k = 0; k < batch; ++k)
            futs.push_back(std::async(std::launch::async, run_cell,
                                      std::cref(specs[next + k])));
        for (std::size_t k = 0; k < batch; ++k) results[next + k] = futs[k].get();
        next += batch;
    }
#ifdef _OPENMP
    omp_set_num_threads(prev_threads);
#endif
    return results;
}

std::string metric_or_divergence(const CellResult& r, double value) {
    if (r.failed) return "diverged@" + std::to_string(r.metrics.diverged_step);
    return format_double(value);
}

} // namespace

RunMetrics simulate(const RunSpec& spec, RunObserver* observer) {
    const BenchmarkCase bench = spec.make_case();
    const SolverConfig cfg = spec.make_solver_config();
    Solver solver(cfg, bench.flow());
    const ScalarField phi0 = bench.initial_condition(cfg.grid, cfg.width);
    solver.set_initial_condition(phi0);

    RunMetrics m;
    m.mass_initial = positive_mass(phi0);
    m.total_phi_initial = total_phi(phi0);
    m.phi_min = solver.state().phi_min;
    m.phi_max = solver.state().phi_max;

    const long steps_per_period = bench.period_steps(solver.dt());
    const long total_steps = std::llround(spec.resolved_periods() * steps_per_period);
    if (observer) observer->start(solver);

    for (long s = 1; s <= total_steps; ++s) {
        try {
            solver.step();
        } catch (const DivergenceError& e) {
            m.diverged = true;
            m.diverged_step = e.step;
            break;
        }
        m.phi_min = std::min(m.phi_min, solver.state().phi_min);
        m.phi_max = std::max(m.phi_max, solver.state().phi_max);
        if (observer && (s % spec.diag_cadence == 0 || s == total_steps))
            observer->sample(solver);
        if (s % steps_per_period == 0) {
            m.l2_at_period.push_back(l2_error(solver.state().phi, phi0));
            if (observer) observer->period(int(s / steps_per_period), solver);
        }
    }

    m.steps = solver.state().step_count;
    m.mass_final = positive_mass(solver.state().phi);
    m.total_phi_final = total_phi(solver.state().phi);
    if (observer) observer->finish(solver);
    return m;
}

int run(const RunSpec& spec, RunMetrics* out) {
    DiskObserver obs(spec);
    RunMetrics m = simulate(spec, &obs);

    std::ofstream summary(spec.out_dir / "summary.txt");
    summary << spec.describe();
    summary << "steps = " << m.steps << '\n';
    summary << "mass_initial = " << format_double(m.mass_initial) << '\n';
    summary << "mass_final = " << format_double(m.mass_final) << '\n';
    summary << "phi_min = " << format_double(m.phi_min) << '\n';
    summary << "phi_max = " << format_double(m.phi_max) << '\n';
    if (!m.l2_at_period.empty())
        summary << "final_l2 = " << format_double(m.final_l2()) << '\n';
    if (m.diverged)
        summary << "status = diverged at step " << m.diverged_step << '\n';
    else
        summary << "status = completed\n";

    if (out) *out = m;
    return m.diverged ? 3 : 0;
}

namespace {

// Published reference values for the side-by-side table columns.
const double kTable1Paper[3][4] = {
    {0.3528, 0.1244, 0.0278, 0.0111},    // DUGKS-AC
    {0.3747, 0.0999, 0.0160, 0.0064},    // DUGKS-I
    {0.3747, 0.0999, 0.0160, 0.0064},    // DUGKS-II
};
const FaceSchemeKind kTable1Schemes[4] = {
    FaceSchemeKind::CDI2, FaceSchemeKind::CDI4, FaceSchemeKind::WenoZ3,
    FaceSchemeKind::WenoZ5};

const double kTable2Pe[5] = {50, 250, 500, 1000, 2000};
const double kTable2Paper[3][5] = {
    {0.0108, 0.0416, 0.0577, 0.0829, 0.0901},
    {0.0077, 0.0032, 0.0059, 0.1147, 0.1907},
    {0.0077, 0.0032, 0.0059, 0.0948, 0.1906},
};

const double kTable3Chi[6] = {0.1, 0.2, 0.4, 0.5, 0.8, 1.0};
const double kTable3Paper[3][6] = {
    {0.0196, 0.0117, 0.0091, 0.0111, 0.025, 0.041},
    {0.0196, 0.0118, 0.0073, 0.0064, 0.0052, 0.0052},
    {0.0196, 0.0118, 0.0073, 0.0064, 0.0051, 0.0051},
};

const int kTable4Grids[4] = {50, 100, 200, 400};
const double kTable4Paper[3][4] = {
    {0.2860, 0.1912, 0.1090, 0.0360},
    {6.998e-2, 2.793e-2, 4.294e-3, 4.220e-4},
    {6.997e-2, 2.792e-2, 4.291e-3, 4.210e-4},
};
const double kTable4PaperOrder[3][4] = {
    {kNan, 0.56, 0.81, 1.60},
    {kNan, 1.36, 2.70, 3.34},
    {kNan, 1.33, 2.70, 3.35},
};

// Vortex deformation at t = T: L2 error and relative mass loss.
const double kVortexPaperL2[3] = {0.0779, 0.0579, 0.0579};
const double kVortexPaperMass[3] = {5.65e-2, 6.34e-2, 6.34e-2};

int table1(const std::filesystem::path& out_dir, int jobs) {
    std::vector<RunSpec> specs;
    for (const auto& p : kPresets)
        for (FaceSchemeKind scheme : kTable1Schemes) {
            RunSpec spec = base_spec(p.preset, BenchmarkKind::Translation);
            spec.face_scheme.kind = scheme;
            specs.push_back(spec);
        }
    const auto results = run_cells(specs, jobs);
    CsvWriter csv(out_dir / "table1.csv",
                  {"model", "scheme", "l2", "paper_l2"});
    std::size_t k = 0;
    for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 4; ++s, ++k)
            csv.row({kPresets[m].name, to_string(kTable1Schemes[s]),
                     metric_or_divergence(results[k], results[k].metrics.final_l2()),
                     format_double(kTable1Paper[m][s])});
    return 0;
}

int table2(const std::filesystem::path& out_dir, int jobs) {
    std::vector<RunSpec> specs;
    for (const auto& p : kPresets)
        for (double pe : kTable2Pe) {
            RunSpec spec = base_spec(p.preset, BenchmarkKind::Translation);
            spec.pe = pe;
            specs.push_back(spec);
        }
    const auto results = run_cells(specs, jobs);
    CsvWriter csv(out_dir / "table2.csv", {"model", "pe", "l2", "paper_l2"});
    std::size_t k = 0;
    for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 5; ++s, ++k)
            csv.row({kPresets[m].name, format_double(kTable2Pe[s]),
                     metric_or_divergence(results[k], results[k].metrics.final_l2()),
                     format_double(kTable2Paper[m][s])});
    return 0;
}

int table3(const std::filesystem::path& out_dir, int jobs) {
    std::vector<RunSpec> specs;
    for (const auto& p : kPresets)
        for (double chi : kTable3Chi) {
            RunSpec spec = base_spec(p.preset, BenchmarkKind::Translation);
            spec.chi = chi;
            specs.push_back(spec);
        }
    const auto results = run_cells(specs, jobs);
    CsvWriter csv(out_dir / "table3.csv", {"model", "chi", "l2", "paper_l2"});
    std::size_t k = 0;
    for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 6; ++s, ++k)
            csv.row({kPresets[m].name, format_double(kTable3Chi[s]),
                     metric_or_divergence(results[k], results[k].metrics.final_l2()),
                     format_double(kTable3Paper[m][s])});
    return 0;
}

int table4(const std::filesystem::path& out_dir) {
    CsvWriter csv(out_dir / "table4.csv",
                  {"model", "grid", "l2", "order", "paper_l2", "paper_order"});
    for (int m = 0; m < 3; ++m) {
        RunSpec spec = base_spec(kPresets[m].preset, BenchmarkKind::Translation);
        SolverConfig proto = spec.make_solver_config();
        const auto rows = convergence_study(
            proto, std::vector<int>(std::begin(kTable4Grids), std::end(kTable4Grids)),
            0.015);
        for (std::size_t g = 0; g < rows.size(); ++g)
            csv.row({kPresets[m].name, std::to_string(rows[g].cells),
                     format_double(rows[g].l2), format_double(rows[g].order),
                     format_double(kTable4Paper[m][g]),
                     format_double(kTable4PaperOrder[m][g])});
    }
    return 0;
}

int vortex_metrics(const std::filesystem::path& out_dir, int jobs) {
    std::vector<RunSpec> specs;
    for (const auto& p : kPresets)
        specs.push_back(base_spec(p.preset, BenchmarkKind::Vortex));
    const auto results = run_cells(specs, jobs);
    CsvWriter csv(out_dir / "vortex_metrics.csv",
                  {"model", "l2", "mass_loss", "min_phi", "max_phi", "paper_l2",
                   "paper_mass_loss"});
    for (int m = 0; m < 3; ++m) {
        const auto& r = results[m];
        csv.row({kPresets[m].name,
                 metric_or_divergence(r, r.metrics.final_l2()),
                 metric_or_divergence(r, r.metrics.relative_mass_loss()),
                 format_double(r.metrics.phi_min), format_double(r.metrics.phi_max),
                 format_double(kVortexPaperL2[m]),
                 format_double(kVortexPaperMass[m])});
    }
    return 0;
}

} // namespace

int table_driver(const std::string& which, const std::filesystem::path& out_dir,
                 int parallel_jobs) {
    std::filesystem::create_directories(out_dir);
    if (which == "table1") return table1(out_dir, parallel_jobs);
    if (which == "table2") return table2(out_dir, parallel_jobs);
    if (which == "table3") return table3(out_dir, parallel_jobs);
    if (which == "table4") return table4(out_dir);
    if (which == "vortex_metrics") return vortex_metrics(out_dir, parallel_jobs);
    throw ConfigError("unknown table '" + which +
                      "' (expected table1..table4 or vortex_metrics)");
}

int convergence_driver(const std::string& preset,
                       const std::filesystem::path& out_dir,
                       const std::vector<int>& grids) {
    std::filesystem::create_directories(out_dir);
    RunSpec spec = base_spec(preset_by_name(preset), BenchmarkKind::Translation);
    SolverConfig proto = spec.make_solver_config();
    const auto rows = convergence_study(proto, grids, 0.015);
    CsvWriter csv(out_dir / ("convergence_" + preset + ".csv"),
                  {"grid", "l2", "order"});
    for (const auto& r : rows)
        csv.row({std::to_string(r.cells), format_double(r.l2),
                 format_double(r.order)});
    return 0;
}

} // namespace dugks
