#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dugks/config.hpp"

namespace dugks {

struct RunMetrics {
    std::vector<double> l2_at_period;  // entry p-1 = error after p periods
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double phi_min = 0.0;   // global extrema over the whole run
    double phi_max = 0.0;
    double total_phi_initial = 0.0;
    double total_phi_final = 0.0;
    long steps = 0;
    bool diverged = false;
    long diverged_step = 0;

    double final_l2() const {
        return l2_at_period.empty() ? 0.0 : l2_at_period.back();
    }
    double relative_mass_loss() const {
        return (mass_initial - mass_final) / mass_initial;
    }
};

// Progress/diagnostics hook driven by simulate(); the disk-writing run
// layers its artifact output on top of this.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void start(const Solver&) {}
    virtual void sample(const Solver&) {}              // every diag_cadence steps
    virtual void period(int /*p*/, const Solver&) {}   // at period boundaries
    virtual void finish(const Solver&) {}
};

// Runs the configured benchmark for the requested number of periods.
// Divergence is reported in the metrics instead of escaping.
RunMetrics simulate(const RunSpec& spec, RunObserver* observer = nullptr);

// simulate() plus the artifact set under spec.out_dir: errors.csv,
// mass.csv, extrema.csv, contour_<t>.csv, field snapshots, summary.txt.
// Returns the process exit code (0 ok, 3 diverged).
int run(const RunSpec& spec, RunMetrics* out = nullptr);

// Reproduces one of the published sweeps; writes <which>.csv under
// out_dir with the measured values next to the published ones. Failed
// cells are recorded as "diverged" without aborting the sweep.
// Names: table1, table2, table3, table4, vortex_metrics.
int table_driver(const std::string& which, const std::filesystem::path& out_dir,
                 int parallel_jobs = 0);

// Grid-refinement study for a named preset (table4 protocol for one
// solver); writes convergence_<preset>.csv.
int convergence_driver(const std::string& preset,
                       const std::filesystem::path& out_dir,
                       const std::vector<int>& grids = {50, 100, 200, 400});

} // namespace dugks
