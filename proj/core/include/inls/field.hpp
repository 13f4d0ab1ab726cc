#pragma once

#include <complex>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

using Complex = std::complex<double>;

/// Discretized complex wavefunction on a periodic Cartesian grid.
struct Field {
    std::vector<Complex> values;
    CartesianGrid grid;
    double time = 0.0;

    bool finite() const;
};

Field make_field(const CartesianGrid& grid, double time = 0.0);

/// Throws std::runtime_error if any sample is NaN or Inf.
void require_finite(const Field& u);

/// Largest |u| over the outermost layer of cells on each axis.
double boundary_amplitude(const Field& u);

/// Mass fraction carried by the outermost layer of cells.
double boundary_mass_fraction(const Field& u);

} // namespace inls
