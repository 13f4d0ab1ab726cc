#pragma once

#include <utility>
#include <vector>

#include "inls/field.hpp"
#include "inls/params.hpp"

namespace inls {

struct EnergyBreakdown {
    double kinetic = 0.0;   ///< (1/2) ||grad u||_2^2
    double potential = 0.0; ///< (1/(p+1)) int |x|^{-b} |u|^{p+1}
    double total = 0.0;     ///< kinetic - potential
};

struct VirialSample {
    double t = 0.0;
    double gamma = 0.0;
    double gamma_prime = 0.0;
};

/// int |u|^2 dx by the periodic trapezoidal (= midpoint) rule.
double mass(const Field& u);

/// Mass restricted to the ball |x| < radius.
double mass_within_radius(const Field& u, double radius);

/// ||grad u||_2^2 with the spectral gradient.
double grad_norm_sq(const Field& u);

EnergyBreakdown energy(const Field& u, const Params& params);
EnergyBreakdown energy(const Field& u, const Params& params,
                       const std::vector<double>& weights);

/// int |x|^{-b} |u|^{p+1} dx (no 1/(p+1) factor).
double potential_integral(const Field& u, const Params& params,
                          const std::vector<double>& weights);

/// Weinstein quotient ||grad u||^2 ||u||^{p-1} / int |x|^{-b}|u|^{p+1}.
/// Invariant under phase exactly and under the critical rescaling.
double weinstein_quotient(const Field& u, const Params& params);

/// E(u) - (1/2)||grad u||^2 (1 - (||u|| / ||psi||)^{(4-2b)/N}).
/// Nonnegative up to discretization error, by the sharp
/// Gagliardo-Nirenberg-type inequality at the critical exponent.
double gn_gap(const Field& u, double psi_mass_sq, const Params& params);

/// Gamma = int |x|^2 |u|^2. With strict set, throws when the field has
/// not decayed below 1e-10 (relative to its peak) at the box boundary.
double virial_gamma(const Field& u, bool strict = false);

/// Gamma' = 4 Im int conj(u) (x . grad u).
double virial_gamma_prime(const Field& u, bool strict = false);

/// Real phase function theta sampled on the grid together with its
/// analytically sampled gradient (one array per axis).
struct ThetaField {
    std::vector<double> values;
    std::vector<std::vector<double>> grad;
};

/// theta = |x|^2 / 2 with exact gradient x (not compactly supported).
ThetaField theta_quadratic(const CartesianGrid& grid);

/// Radial C^2 truncation of |x|^2/2: equal to it for r <= r_inner and
/// constant for r >= r_outer, blended by a quintic smoothstep.
ThetaField theta_quadratic_truncated(const CartesianGrid& grid, double r_inner,
                                     double r_outer);

/// Smooth periodic theta: amplitude * sum_a cos(mode_a pi x_a / L + phase_a).
ThetaField theta_cosine(const CartesianGrid& grid, double amplitude,
                        const std::vector<int>& modes,
                        const std::vector<double>& phases);

/// u e^{i s theta}, pointwise.
Field modulate(const Field& u, const ThetaField& theta, double s);

/// Both sides of the refined Cauchy-Schwarz bound for critical-mass
/// fields: lhs = |int grad(theta) . Im(conj(u) grad u)|,
/// rhs = sqrt(2 E(u)) (int |grad theta|^2 |u|^2)^{1/2}.
/// Requires ||u||_2^2 within mass_tol (relative) of psi_mass_sq and
/// E(u) >= -energy_tol * max(1, ||grad u||^2).
std::pair<double, double> refined_cauchy_schwarz(const Field& u, const ThetaField& theta,
                                                 const Params& params, double psi_mass_sq,
                                                 double mass_tol = 1e-6,
                                                 double energy_tol = 1e-8);

/// Quadratic-in-s expansion of E(u e^{i s theta}):
/// E(u) + s int grad(theta) . Im(conj(u) grad u) + (s^2/2) int |grad theta|^2 |u|^2.
double phase_modulated_energy(const Field& u, const ThetaField& theta, double s,
                              const Params& params);

} // namespace inls
