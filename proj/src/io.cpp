#include "dugks/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dugks {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_scalar_snapshot(const std::filesystem::path& path,
                           const ScalarField& f, double time) {
    const Grid2D& g = f.grid;
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << g.nx << ' ' << g.ny << ' ' << format_double(g.h) << ' '
            << format_double(time) << '\n';
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out << i << ' ' << j << ' ' << format_double(f(i, j)) << '\n';
    }
    if (g.cells() > kBinarySnapshotThreshold) {
        auto bin = path;
        bin += ".bin";
        std::ofstream out(bin, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + bin.string());
        out.write(reinterpret_cast<const char*>(f.values.data()),
                  std::streamsize(f.values.size() * sizeof(double)));
        auto hdr = bin;
        hdr += ".hdr";
        std::ofstream h(hdr);
        h << g.nx << ' ' << g.ny << ' ' << format_double(g.h) << ' '
          << format_double(time) << '\n';
    }
}

Snapshot read_scalar_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    int nx = 0, ny = 0;
    double h = 0.0, time = 0.0;
    if (!(in >> nx >> ny >> h >> time))
        throw std::runtime_error("bad snapshot header in " + path.string());
    Snapshot s;
    s.time = time;
    s.field = ScalarField(Grid2D(nx, ny, h));
    int i, j;
    double v;
    while (in >> i >> j >> v) s.field(i, j) = v;
    return s;
}

void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<Polyline>& lines) {
    CsvWriter csv(path, {"polyline", "x", "y"});
    for (std::size_t k = 0; k < lines.size(); ++k)
        for (const Vec2& p : lines[k])
            csv.row({std::to_string(k), format_double(p.x), format_double(p.y)});
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out_ << ',';
        out_ << cells[k];
    }
    out_ << '\n';
}

void CsvWriter::row_values(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace dugks
