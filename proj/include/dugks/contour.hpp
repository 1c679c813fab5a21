#pragma once

#include <vector>

#include "dugks/fields.hpp"
#include "dugks/vec2.hpp"

namespace dugks {

using Polyline = std::vector<Vec2>;

// Marching-squares extraction of the phi = level contour on the
// cell-center lattice. Squares straddling the periodic seam are skipped;
// the benchmark shapes stay clear of the boundary.
std::vector<Polyline> extract_contour(const ScalarField& phi, double level = 0.0);

} // namespace dugks
