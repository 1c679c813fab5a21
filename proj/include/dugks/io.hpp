#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dugks/contour.hpp"
#include "dugks/fields.hpp"

namespace dugks {

// Doubles are printed with 17 significant digits so every CSV artifact
// parses back to the identical bit pattern.
std::string format_double(double v);

inline constexpr std::size_t kBinarySnapshotThreshold = std::size_t(1) << 16;

// Snapshot: header line "nx ny h time", then one "i j value" row per
// cell. Grids past the large-grid threshold also get a raw little-endian
// binary dump (row-major doubles) next to a one-line header sidecar.
void write_scalar_snapshot(const std::filesystem::path& path,
                           const ScalarField& f, double time);

struct Snapshot {
    ScalarField field;
    double time = 0.0;
};
Snapshot read_scalar_snapshot(const std::filesystem::path& path);

void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<Polyline>& lines);

// Minimal row-oriented CSV writer.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path,
              const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void row_values(const std::vector<double>& values);

private:
    std::ofstream out_;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

} // namespace dugks
