#include "inls/ensembles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "inls/fft.hpp"
#include "inls/functionals.hpp"

namespace inls {

Field random_band_limited(const CartesianGrid& grid, std::uint64_t seed, int max_mode,
                          double target_mass_sq) {
    if (max_mode < 1 || max_mode >= grid.points / 2)
        throw std::invalid_argument("band limit out of range");
    if (target_mass_sq <= 0.0)
        throw std::invalid_argument("target mass must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Complex> hat(grid.total(), Complex(0.0, 0.0));
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
        auto mi = grid.unravel(idx);
        bool in_band = true;
        for (int a = 0; a < grid.dim; ++a) {
            int m = (mi[a] <= grid.points / 2) ? mi[a] : mi[a] - grid.points;
            if (std::abs(m) > max_mode)
                in_band = false;
        }
        // draw in index order regardless of the band so the ensemble is
        // reproducible across band limits only when they match
        if (in_band)
            hat[idx] = Complex(gauss(rng), gauss(rng));
    }
    Field u = make_field(grid);
    spectral_for(grid)->inverse(hat, u.values);
    double m = mass(u);
    double s = std::sqrt(target_mass_sq / m);
    for (auto& v : u.values)
        v *= s;
    return u;
}

Field random_localized(const CartesianGrid& grid, std::uint64_t seed, int max_mode,
                       double target_mass_sq, double width) {
    if (width <= 0.0)
        throw std::invalid_argument("envelope width must be positive");
    Field u = random_band_limited(grid, seed, max_mode, target_mass_sq);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        u.values[i] *= std::exp(-grid.radius_sq(i) / (2.0 * width * width));
    double m = mass(u);
    double s = std::sqrt(target_mass_sq / m);
    for (auto& v : u.values)
        v *= s;
    return u;
}

} // namespace inls
