#include "dugks/contour.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <utility>

namespace dugks {

namespace {

// Edge ids: horizontal edge right of node (i,j) gets 2*(j*nx+i),
// vertical edge above node (i,j) gets 2*(j*nx+i)+1. Crossing points on
// shared edges are computed once, so segment endpoints match exactly.
struct Crossings {
    std::map<std::int64_t, Vec2> point;

    std::int64_t hid(int i, int j, int nx) const {
        return 2 * (std::int64_t(j) * nx + i);
    }
    std::int64_t vid(int i, int j, int nx) const {
        return 2 * (std::int64_t(j) * nx + i) + 1;
    }
};

} // namespace

std::vector<Polyline> extract_contour(const ScalarField& phi, double level) {
    const Grid2D& g = phi.grid;
    const int nx = g.nx, ny = g.ny;
    Crossings cr;

    auto value = [&](int i, int j) { return phi(i, j) - level; };
    auto interp = [&](double xa, double ya, double va, double xb, double yb,
                      double vb) -> Vec2 {
        const double t = va / (va - vb);
        return {xa + t * (xb - xa), ya + t * (yb - ya)};
    };

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            const double va = value(i, j), vb = value(i + 1, j);
            if ((va >= 0.0) != (vb >= 0.0))
                cr.point[cr.hid(i, j, nx)] =
                    interp(g.x(i), g.y(j), va, g.x(i + 1), g.y(j), vb);
        }
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double va = value(i, j), vb = value(i, j + 1);
            if ((va >= 0.0) != (vb >= 0.0))
                cr.point[cr.vid(i, j, nx)] =
                    interp(g.x(i), g.y(j), va, g.x(i), g.y(j + 1), vb);
        }

    // Segments as pairs of edge ids, then chained into polylines.
    std::multimap<std::int64_t, std::pair<std::int64_t, std::int64_t>> by_end;
    std::vector<std::pair<std::int64_t, std::int64_t>> segments;
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            const bool s0 = value(i, j) >= 0.0;
            const bool s1 = value(i + 1, j) >= 0.0;
            const bool s2 = value(i + 1, j + 1) >= 0.0;
            const bool s3 = value(i, j + 1) >= 0.0;
            const int code = (s0 ? 1 : 0) | (s1 ? 2 : 0) | (s2 ? 4 : 0) | (s3 ? 8 : 0);
            if (code == 0 || code == 15) continue;
            const std::int64_t bottom = cr.hid(i, j, nx);
            const std::int64_t top = cr.hid(i, j + 1, nx);
            const std::int64_t left = cr.vid(i, j, nx);
            const std::int64_t right = cr.vid(i + 1, j, nx);
            auto add = [&](std::int64_t a, std::int64_t b) {
                segments.emplace_back(a, b);
            };
            switch (code) {
                case 1: case 14: add(bottom, left); break;
                case 2: case 13: add(bottom, right); break;
                case 3: case 12: add(left, right); break;
                case 4: case 11: add(top, right); break;
                case 6: case 9:  add(bottom, top); break;
                case 7: case 8:  add(top, left); break;
                case 5: case 10: {
                    // saddle: split by the cell-average sign
                    const double avg = 0.25 * (value(i, j) + value(i + 1, j) +
                                               value(i + 1, j + 1) + value(i, j + 1));
                    const bool center_in = avg >= 0.0;
                    if ((code == 5) == center_in) {
                        add(bottom, right);
                        add(top, left);
                    } else {
                        add(bottom, left);
                        add(top, right);
                    }
                    break;
                }
            }
        }

    for (std::size_t k = 0; k < segments.size(); ++k) {
        by_end.emplace(segments[k].first, std::make_pair(std::int64_t(k), 0));
        by_end.emplace(segments[k].second, std::make_pair(std::int64_t(k), 1));
    }

    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> lines;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (used[k]) continue;
        // walk both directions from this seed segment
        std::vector<std::int64_t> chain{segments[k].first, segments[k].second};
        used[k] = true;
        for (int dir = 0; dir < 2; ++dir) {
            while (true) {
                const std::int64_t tip = dir == 0 ? chain.back() : chain.front();
                auto range = by_end.equal_range(tip);
                std::int64_t next = -1, seg = -1;
                for (auto it = range.first; it != range.second; ++it) {
                    const std::int64_t si = it->second.first;
                    if (used[si]) continue;
                    seg = si;
                    next = it->second.second == 0 ? segments[si].second
                                                  : segments[si].first;
                    break;
                }
                if (seg < 0) break;
                used[seg] = true;
                if (dir == 0)
                    chain.push_back(next);
                else
                    chain.insert(chain.begin(), next);
            }
        }
        Polyline line;
        line.reserve(chain.size());
        for (std::int64_t id : chain) line.push_back(cr.point.at(id));
        lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace dugks
