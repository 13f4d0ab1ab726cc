#include "inls/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

namespace {

// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p0, p1;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15)
                    break;
            }
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& gauss32() {
    static GaussRule rule(32);
    return rule;
}

const GaussRule& gauss16() {
    static GaussRule rule(16);
    return rule;
}

// Antiderivative of |x|^{-b}: sign(x) |x|^{1-b} / (1-b).
double inv_pow_primitive(double x, double b) {
    double s = (x >= 0.0) ? 1.0 : -1.0;
    return s * std::pow(std::abs(x), 1.0 - b) / (1.0 - b);
}

} // namespace

double cell_average_1d(double x1, double x2, double b) {
    if (x2 <= x1)
        throw std::invalid_argument("empty cell");
    if (b == 0.0)
        return 1.0;
    if (b >= 1.0 && x1 * x2 <= 0.0)
        throw std::invalid_argument("cell average diverges: b >= 1 across the origin");
    return (inv_pow_primitive(x2, b) - inv_pow_primitive(x1, b)) / (x2 - x1);
}

double unit_cube_inverse_power_integral(int dim, double b) {
    if (b >= dim)
        throw std::invalid_argument("integral of |y|^{-b} over the cube needs b < N");
    const auto& g = gauss32();
    switch (dim) {
    case 1:
        return 2.0 / (1.0 - b);
    case 2: {
        // 8/(2-b) * int_0^1 (1+u^2)^{-b/2} du
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double u = 0.5 * (g.x[i] + 1.0);
            s += 0.5 * g.w[i] * std::pow(1.0 + u * u, -0.5 * b);
        }
        return 8.0 / (2.0 - b) * s;
    }
    case 3: {
        // 24/(3-b) * int_0^1 int_0^1 (1+u^2+v^2)^{-b/2} du dv
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double u = 0.5 * (g.x[i] + 1.0);
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                double v = 0.5 * (g.x[j] + 1.0);
                s += 0.25 * g.w[i] * g.w[j] * std::pow(1.0 + u * u + v * v, -0.5 * b);
            }
        }
        return 24.0 / (3.0 - b) * s;
    }
    default:
        throw std::invalid_argument("unit cube integral implemented for dimensions 1..3");
    }
}

namespace {

// Cell average of |x|^{-b} over the cube of side h centered at (c1..cN),
// for cells whose closure does not contain the origin.
double smooth_cell_average(const double* c, int dim, double h, double b) {
    const auto& g = gauss16();
    const int n = static_cast<int>(g.x.size());
    double sum = 0.0;
    if (dim == 2) {
        for (int i = 0; i < n; ++i) {
            double xi = c[0] + 0.5 * h * g.x[i];
            for (int j = 0; j < n; ++j) {
                double yj = c[1] + 0.5 * h * g.x[j];
                sum += g.w[i] * g.w[j] * std::pow(xi * xi + yj * yj, -0.5 * b);
            }
        }
        return sum / 4.0;
    }
    for (int i = 0; i < n; ++i) {
        double xi = c[0] + 0.5 * h * g.x[i];
        for (int j = 0; j < n; ++j) {
            double yj = c[1] + 0.5 * h * g.x[j];
            for (int k = 0; k < n; ++k) {
                double zk = c[2] + 0.5 * h * g.x[k];
                sum += g.w[i] * g.w[j] * g.w[k] *
                       std::pow(xi * xi + yj * yj + zk * zk, -0.5 * b);
            }
        }
    }
    return sum / 8.0;
}

} // namespace

std::vector<double> weighted_potential_nodes(const CartesianGrid& grid, double b,
                                             bool cell_average_correction) {
    const std::size_t n = grid.total();
    std::vector<double> w(n, 1.0);
    if (b == 0.0)
        return w;
    if (!grid.cell_centered && !cell_average_correction)
        throw std::invalid_argument(
            "node-centered grid has a node at the origin; enable the cell-average correction");

    const double h = grid.spacing();
    const double eps = 1e-12 * h;
    // pointwise sampling of the weight carries an O(h^2 / |x|^2) relative
    // error per cell; averaging every cell within 8h keeps the summed
    // quadrature defect well below the smooth-region h^2 term. In 1D the
    // average has a closed form, so use it everywhere.
    const double near = (grid.dim == 1) ? grid.half_width * 2.0 : 8.0 * h;
    const double near2 = near * near;
    const double cube = (grid.dim >= 1 && b < grid.dim)
                            ? unit_cube_inverse_power_integral(grid.dim, b)
                            : 0.0;

    for (std::size_t idx = 0; idx < n; ++idx) {
        auto mi = grid.unravel(idx);
        double c[3] = {0.0, 0.0, 0.0};
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            c[a] = grid.coord(mi[a]);
            r2 += c[a] * c[a];
        }
        if (!cell_average_correction || r2 > near2) {
            w[idx] = std::pow(r2, -0.5 * b);
            continue;
        }
        // near-origin cell averaging
        bool contains_origin = true;
        bool at_center = true;
        bool at_corner = true;
        for (int a = 0; a < grid.dim; ++a) {
            double d = std::abs(c[a]);
            if (d > 0.5 * h + eps)
                contains_origin = false;
            if (d > eps)
                at_center = false;
            if (std::abs(d - 0.5 * h) > eps)
                at_corner = false;
        }
        if (contains_origin) {
            if (at_center) {
                // origin-centered cube: exact by scaling
                w[idx] = cube * std::pow(0.5 * h, grid.dim - b) / std::pow(h, grid.dim);
            } else if (at_corner) {
                // origin at a cell corner: [0,h]^N up to reflections
                w[idx] = cube * std::pow(h, -b) / std::pow(2.0, grid.dim);
            } else {
                throw std::runtime_error("origin on a cell face: unsupported grid offset");
            }
        } else if (grid.dim == 1) {
            w[idx] = cell_average_1d(c[0] - 0.5 * h, c[0] + 0.5 * h, b);
        } else {
            w[idx] = smooth_cell_average(c, grid.dim, h, b);
        }
    }
    return w;
}

} // namespace inls
