#include "inls/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/fft.hpp"

namespace inls {

Field scale(const Field& u, double lambda0) {
    if (lambda0 <= 0.0)
        throw std::invalid_argument("scaling factor must be positive");
    if (lambda0 == 1.0)
        return u;
    if (lambda0 > 1.0) {
        // samples are pulled from |x| <= lambda0 L, outside the box
        double tol = 1e-10 *
            [&] {
                double peak = 0.0;
                for (const auto& v : u.values)
                    peak = std::max(peak, std::abs(v));
                return peak;
            }();
        if (boundary_amplitude(u) > tol)
            throw std::invalid_argument("rescaled support escapes the box");
    }
    Field out = resample_scaled(u, lambda0);
    double amp = std::pow(lambda0, 0.5 * u.grid.dim);
    for (auto& v : out.values)
        v *= amp;
    return out;
}

Field phase(const Field& u, double gamma0) {
    Field out = u;
    Complex f = std::polar(1.0, gamma0);
    for (auto& v : out.values)
        v *= f;
    return out;
}

Field standing_wave(const SFamilyParams& sp, const GroundState& gs, double t,
                    const CartesianGrid& grid) {
    if (sp.lambda0 <= 0.0)
        throw std::invalid_argument("lambda0 must be positive");
    Field u = make_field(grid, t);
    double amp = std::pow(sp.lambda0, 0.5 * grid.dim);
    Complex ph = std::polar(1.0, sp.gamma0 + sp.lambda0 * sp.lambda0 * t);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double r = std::sqrt(grid.radius_sq(i));
        u.values[i] = ph * (amp * gs.profile.eval(sp.lambda0 * r));
    }
    return u;
}

Field s_family(const SFamilyParams& sp, const GroundState& gs, double t,
               const CartesianGrid& grid) {
    if (sp.lambda0 <= 0.0)
        throw std::invalid_argument("lambda0 must be positive");
    double tau = sp.T - t;
    if (tau <= 0.0)
        throw std::invalid_argument("s_family requires t < T");
    double lam = sp.lambda0 / tau;
    Field u = make_field(grid, t);
    double amp = std::pow(lam, 0.5 * grid.dim);
    double base = sp.gamma0 + sp.lambda0 * sp.lambda0 / tau;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double r2 = grid.radius_sq(i);
        double mod = amp * gs.profile.eval(lam * std::sqrt(r2));
        u.values[i] = std::polar(mod, base - r2 / (4.0 * tau));
    }
    return u;
}

Field pseudo_conformal(const Field& v, double s, double T, const CartesianGrid& grid) {
    if (s <= 0.0)
        throw std::invalid_argument("internal time s = 1/(T-t) must be positive");
    double tau = 1.0 / s; // T - t
    double t = T - tau;

    // target sample points x/tau per axis; pull-back points outside the
    // snapshot box are treated as zero (the periodic interpolant would
    // wrap them onto the peak), which is only sound once the snapshot
    // has decayed at its boundary
    const double Lv = v.grid.half_width;
    double reach = grid.half_width / tau;
    if (reach > Lv) {
        double peak = 0.0;
        for (const auto& w : v.values)
            peak = std::max(peak, std::abs(w));
        if (boundary_amplitude(v) > 1e-6 * peak)
            throw std::invalid_argument("rescaled support escapes the snapshot box");
    }
    std::vector<std::vector<double>> targets(grid.dim);
    std::vector<std::vector<char>> inside(grid.dim);
    for (int a = 0; a < grid.dim; ++a) {
        targets[a].resize(grid.points);
        inside[a].resize(grid.points);
        for (int i = 0; i < grid.points; ++i) {
            double x = grid.coord(i) / tau;
            inside[a][i] = std::abs(x) <= Lv;
            targets[a][i] = inside[a][i] ? x : 0.0;
        }
    }
    Field out = make_field(grid, t);
    out.values = tensor_eval(v, targets);
    double amp = std::pow(tau, -0.5 * grid.dim);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        auto mi = grid.unravel(i);
        bool in = true;
        for (int a = 0; a < grid.dim; ++a)
            in = in && inside[a][mi[a]];
        if (!in) {
            out.values[i] = 0.0;
            continue;
        }
        double r2 = grid.radius_sq(i);
        out.values[i] *= std::polar(amp, -r2 / (4.0 * tau));
    }
    return out;
}

double chirp_phase_step(const CartesianGrid& grid, double tau) {
    // d/dx (x^2 / 4 tau) = x / 2 tau, largest at the box edge, times h,
    // per axis; the worst node-to-node increment sums over axes
    double per_axis = grid.half_width * grid.spacing() / (2.0 * tau);
    return per_axis * grid.dim;
}

} // namespace inls
