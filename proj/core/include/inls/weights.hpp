#pragma once

#include <vector>

#include "inls/grid.hpp"

namespace inls {

/// Per-node quadrature weights w_j ~ |x_j|^{-b} for the potential term.
///
/// The default (corrected) mode replaces pointwise sampling of the
/// singular weight by cell averages of |x|^{-b} near the origin (exact
/// closed form in 1D, high-order Gauss panels in 2D/3D); pointwise
/// sampling alone carries an O(h^{1-b}) quadrature defect concentrated
/// at the origin. Pass cell_average_correction = false to get the raw
/// pointwise weights, which require a cell-centered grid.
std::vector<double> weighted_potential_nodes(const CartesianGrid& grid, double b,
                                             bool cell_average_correction = true);

/// Average of |x|^{-b} over the 1D interval [x1, x2], closed form.
/// Valid for b < 1 when the interval touches or contains the origin.
double cell_average_1d(double x1, double x2, double b);

/// Integral of |y|^{-b} over the unit cube [-1, 1]^N (needs b < N).
/// The integral over a cube of side 2a centered at the origin follows by
/// the exact scaling a^(N-b) times this value.
double unit_cube_inverse_power_integral(int dim, double b);

} // namespace inls
