#include "inls/grid.hpp"

namespace inls {

CartesianGrid make_grid(int dim, int points, double half_width, bool cell_centered) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("Cartesian grids support dimensions 1..3");
    if (points < 4 || points % 2 != 0)
        throw std::invalid_argument("points per axis must be even and >= 4");
    if (half_width <= 0.0)
        throw std::invalid_argument("box half-width must be positive");
    CartesianGrid grid;
    grid.dim = dim;
    grid.points = points;
    grid.half_width = half_width;
    grid.cell_centered = cell_centered;
    return grid;
}

RadialGrid make_radial_grid(std::vector<double> nodes) {
    if (nodes.size() < 2)
        throw std::invalid_argument("radial grid needs at least two nodes");
    if (nodes.front() <= 0.0)
        throw std::invalid_argument("radial grid must start at r_min > 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i] <= nodes[i - 1])
            throw std::invalid_argument("radial nodes must be strictly increasing");
    RadialGrid grid;
    grid.r_min = nodes.front();
    grid.r_max = nodes.back();
    grid.nodes = std::move(nodes);
    return grid;
}

double unit_sphere_area(int dim) {
    switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
    }
}

} // namespace inls
