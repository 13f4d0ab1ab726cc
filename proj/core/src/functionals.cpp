#include "inls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/fft.hpp"
#include "inls/weights.hpp"

namespace inls {

namespace {

double cell_volume(const CartesianGrid& grid) {
    return std::pow(grid.spacing(), grid.dim);
}

void check_boundary_decay(const Field& u, bool strict) {
    if (!strict)
        return;
    double peak = 0.0;
    for (const auto& v : u.values)
        peak = std::max(peak, std::abs(v));
    if (peak > 0.0 && boundary_amplitude(u) > 1e-10 * peak)
        throw std::runtime_error("field has not decayed at the box boundary; "
                                 "|x|^2-weighted quadrature is truncated");
}

} // namespace

double mass(const Field& u) {
    require_finite(u);
    double s = 0.0;
    for (const auto& v : u.values)
        s += std::norm(v);
    return s * cell_volume(u.grid);
}

double mass_within_radius(const Field& u, double radius) {
    require_finite(u);
    const double r2 = radius * radius;
    double s = 0.0;
    for (std::size_t idx = 0; idx < u.values.size(); ++idx)
        if (u.grid.radius_sq(idx) < r2)
            s += std::norm(u.values[idx]);
    return s * cell_volume(u.grid);
}

double grad_norm_sq(const Field& u) {
    require_finite(u);
    return spectral_for(u.grid)->grad_norm_sq(u.values);
}

double potential_integral(const Field& u, const Params& params,
                          const std::vector<double>& weights) {
    const double q = params.p + 1.0;
    double s = 0.0;
    for (std::size_t idx = 0; idx < u.values.size(); ++idx)
        s += weights[idx] * std::pow(std::abs(u.values[idx]), q);
    return s * cell_volume(u.grid);
}

EnergyBreakdown energy(const Field& u, const Params& params,
                       const std::vector<double>& weights) {
    require_finite(u);
    EnergyBreakdown e;
    e.kinetic = 0.5 * grad_norm_sq(u);
    e.potential = potential_integral(u, params, weights) / (params.p + 1.0);
    e.total = e.kinetic - e.potential;
    if (!std::isfinite(e.total))
        throw std::runtime_error("non-finite energy");
    return e;
}

EnergyBreakdown energy(const Field& u, const Params& params) {
    return energy(u, params, weighted_potential_nodes(u.grid, params.b));
}

double weinstein_quotient(const Field& u, const Params& params) {
    require_finite(u);
    auto weights = weighted_potential_nodes(u.grid, params.b);
    double denom = potential_integral(u, params, weights);
    if (denom <= 0.0)
        throw std::runtime_error("Weinstein quotient undefined: vanishing potential term");
    double m = mass(u);
    return grad_norm_sq(u) * std::pow(m, 0.5 * (params.p - 1.0)) / denom;
}

double gn_gap(const Field& u, double psi_mass_sq, const Params& params) {
    auto e = energy(u, params);
    double ratio = std::pow(mass(u) / psi_mass_sq, (2.0 - params.b) / params.dim);
    return e.total - 0.5 * (2.0 * e.kinetic) * (1.0 - ratio);
}

double virial_gamma(const Field& u, bool strict) {
    require_finite(u);
    check_boundary_decay(u, strict);
    double s = 0.0;
    for (std::size_t idx = 0; idx < u.values.size(); ++idx)
        s += u.grid.radius_sq(idx) * std::norm(u.values[idx]);
    return s * cell_volume(u.grid);
}

double virial_gamma_prime(const Field& u, bool strict) {
    require_finite(u);
    check_boundary_decay(u, strict);
    auto sp = spectral_for(u.grid);
    double s = 0.0;
    for (int a = 0; a < u.grid.dim; ++a) {
        auto du = sp->derivative(u.values, a);
        for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
            auto mi = u.grid.unravel(idx);
            double x = u.grid.coord(mi[a]);
            s += x * std::imag(std::conj(u.values[idx]) * du[idx]);
        }
    }
    return 4.0 * s * cell_volume(u.grid);
}

ThetaField theta_quadratic(const CartesianGrid& grid) {
    ThetaField theta;
    theta.values.resize(grid.total());
    theta.grad.assign(grid.dim, std::vector<double>(grid.total()));
    for (std::size_t idx = 0; idx < theta.values.size(); ++idx) {
        auto mi = grid.unravel(idx);
        double r2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            double x = grid.coord(mi[a]);
            r2 += x * x;
            theta.grad[a][idx] = x;
        }
        theta.values[idx] = 0.5 * r2;
    }
    return theta;
}

ThetaField theta_quadratic_truncated(const CartesianGrid& grid, double r_inner,
                                     double r_outer) {
    if (!(0.0 < r_inner && r_inner < r_outer))
        throw std::invalid_argument("need 0 < r_inner < r_outer");
    ThetaField theta;
    theta.values.resize(grid.total());
    theta.grad.assign(grid.dim, std::vector<double>(grid.total()));
    const double plateau = 0.5 * r_outer * r_outer;
    const double span = r_outer - r_inner;
    for (std::size_t idx = 0; idx < theta.values.size(); ++idx) {
        auto mi = grid.unravel(idx);
        double r2 = 0.0;
        double x[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < grid.dim; ++a) {
            x[a] = grid.coord(mi[a]);
            r2 += x[a] * x[a];
        }
        double r = std::sqrt(r2);
        double f, df; // theta = f(r), radial derivative df
        if (r <= r_inner) {
            f = 0.5 * r2;
            df = r;
        } else if (r >= r_outer) {
            f = plateau;
            df = 0.0;
        } else {
            double s = (r - r_inner) / span;
            double w = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
            double dw = 30.0 * s * s * (1.0 - s) * (1.0 - s) / span;
            f = 0.5 * r2 * (1.0 - w) + plateau * w;
            df = r * (1.0 - w) + (plateau - 0.5 * r2) * dw;
        }
        theta.values[idx] = f;
        for (int a = 0; a < grid.dim; ++a)
            theta.grad[a][idx] = (r > 0.0) ? df * x[a] / r : 0.0;
    }
    return theta;
}

ThetaField theta_cosine(const CartesianGrid& grid, double amplitude,
                        const std::vector<int>& modes,
                        const std::vector<double>& phases) {
    if (static_cast<int>(modes.size()) != grid.dim ||
        static_cast<int>(phases.size()) != grid.dim)
        throw std::invalid_argument("theta_cosine needs one mode and phase per axis");
    ThetaField theta;
    theta.values.assign(grid.total(), 0.0);
    theta.grad.assign(grid.dim, std::vector<double>(grid.total()));
    for (std::size_t idx = 0; idx < theta.values.size(); ++idx) {
        auto mi = grid.unravel(idx);
        for (int a = 0; a < grid.dim; ++a) {
            double k = M_PI * modes[a] / grid.half_width;
            double arg = k * grid.coord(mi[a]) + phases[a];
            theta.values[idx] += amplitude * std::cos(arg);
            theta.grad[a][idx] = -amplitude * k * std::sin(arg);
        }
    }
    return theta;
}

Field modulate(const Field& u, const ThetaField& theta, double s) {
    Field out = u;
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
        out.values[idx] *= std::polar(1.0, s * theta.values[idx]);
    return out;
}

namespace {

// X = int grad(theta) . Im(conj(u) grad u),  Y = int |grad theta|^2 |u|^2
std::pair<double, double> theta_bilinear_terms(const Field& u, const ThetaField& theta) {
    auto sp = spectral_for(u.grid);
    double x_term = 0.0;
    double y_term = 0.0;
    for (int a = 0; a < u.grid.dim; ++a) {
        auto du = sp->derivative(u.values, a);
        const auto& g = theta.grad[a];
        for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
            x_term += g[idx] * std::imag(std::conj(u.values[idx]) * du[idx]);
            y_term += g[idx] * g[idx] * std::norm(u.values[idx]);
        }
    }
    double vol = cell_volume(u.grid);
    return {x_term * vol, y_term * vol};
}

} // namespace

std::pair<double, double> refined_cauchy_schwarz(const Field& u, const ThetaField& theta,
                                                 const Params& params, double psi_mass_sq,
                                                 double mass_tol, double energy_tol) {
    double m = mass(u);
    if (std::abs(m - psi_mass_sq) > mass_tol * psi_mass_sq)
        throw std::invalid_argument("refined Cauchy-Schwarz requires a critical-mass field");
    auto e = energy(u, params);
    double scale = std::max(1.0, 2.0 * e.kinetic);
    if (e.total < -energy_tol * scale)
        throw std::runtime_error("negative energy at critical mass: "
                                 "sharp inequality violated beyond tolerance");
    auto [x_term, y_term] = theta_bilinear_terms(u, theta);
    double lhs = std::abs(x_term);
    double rhs = std::sqrt(2.0 * std::max(e.total, 0.0)) * std::sqrt(std::max(y_term, 0.0));
    return {lhs, rhs};
}

double phase_modulated_energy(const Field& u, const ThetaField& theta, double s,
                              const Params& params) {
    auto e = energy(u, params);
    auto [x_term, y_term] = theta_bilinear_terms(u, theta);
    return e.total + s * x_term + 0.5 * s * s * y_term;
}

} // namespace inls
