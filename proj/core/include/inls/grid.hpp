#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace inls {

/// Periodic Cartesian grid on the box [-L, L]^N, M samples per axis.
///
/// In cell-centered mode nodes sit at x_i = -L + (i + 1/2) h, so no node
/// coincides with the origin and the weight |x|^{-b} is finite everywhere.
struct CartesianGrid {
    int dim = 1;               ///< spatial dimension (1, 2 or 3)
    int points = 0;            ///< samples per axis, even
    double half_width = 0.0;   ///< box half-width L
    bool cell_centered = true;

    double spacing() const { return 2.0 * half_width / points; }

    std::size_t total() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a)
            n *= static_cast<std::size_t>(points);
        return n;
    }

    /// Node coordinate along one axis.
    double coord(int i) const {
        double offset = cell_centered ? 0.5 : 0.0;
        return -half_width + (i + offset) * spacing();
    }

    /// Fourier wavenumber of DFT index i: k = pi * m / L, m in [-M/2, M/2).
    double wavenumber(int i) const {
        int m = (i <= points / 2) ? i : i - points;
        return M_PI * m / half_width;
    }

    bool is_nyquist(int i) const { return i == points / 2; }

    /// Multi-index of a flat row-major index.
    std::array<int, 3> unravel(std::size_t idx) const {
        std::array<int, 3> mi{0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            mi[a] = static_cast<int>(idx % points);
            idx /= points;
        }
        return mi;
    }

    /// |x|^2 at a flat node index.
    double radius_sq(std::size_t idx) const {
        auto mi = unravel(idx);
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            double x = coord(mi[a]);
            r2 += x * x;
        }
        return r2;
    }
};

CartesianGrid make_grid(int dim, int points, double half_width, bool cell_centered = true);

/// Strictly increasing radii with r_min > 0, used by the radial solvers.
struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<double> nodes;
};

RadialGrid make_radial_grid(std::vector<double> nodes);

/// Surface area of the unit sphere S^{N-1} (2 for N = 1).
double unit_sphere_area(int dim);

} // namespace inls
