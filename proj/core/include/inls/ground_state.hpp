#pragma once

#include <vector>

#include "inls/field.hpp"
#include "inls/params.hpp"
#include "inls/radial.hpp"

namespace inls {

/// Positive radial solution of  Laplace(phi) - phi + |x|^{-b} phi^p = 0
/// together with its norms. Zero energy and the Pohozaev-type ledger
/// grad_sq + mass_sq = potential_term hold within solver tolerance.
struct GroundState {
    Params params;
    RadialProfile profile;
    double psi0 = 0.0;           ///< phi(0)
    double mass_sq = 0.0;        ///< ||phi||_2^2
    double grad_sq = 0.0;        ///< ||grad phi||_2^2
    double potential_term = 0.0; ///< int |x|^{-b} phi^{p+1}
    double virial_sq = 0.0;      ///< int |x|^2 phi^2
    double j_min = 0.0;          ///< Weinstein quotient at phi
    double residual = 0.0;       ///< worst relative defect of the identities
};

/// Radial shooting with bisection on phi(0). The integration steps off
/// the singular point with a series start and matches an exponential
/// tail once the profile has decayed.
GroundState shoot(const Params& params, double tol = 1e-13);

struct FlowDiagnostics {
    int iterations = 0;
    std::vector<double> residuals;
};

/// Independent oracle for shoot(): stabilized fixed-point iteration on
/// (1 - Laplace) u = |x|^{-b} |u|^{p-1} u on a Cartesian grid, started
/// from a positive radial Gaussian (or the given seed). The stabilizing
/// power keeps the iteration attracted to the ground state despite the
/// scale-neutral direction of the critical exponent; the limit solves
/// the equation with coefficient one on the linear term.
GroundState gradient_flow(const Params& params, const CartesianGrid& grid,
                          double tol = 1e-9, const Field* seed = nullptr,
                          FlowDiagnostics* diag = nullptr);

struct CharacterizationResult {
    bool is_ground_state_orbit = false;
    double lambda0 = 0.0;
    double gamma0 = 0.0;
    double h1_distance = 0.0;
    double energy = 0.0;
};

/// Decides whether a critical-mass field v lies on the orbit
/// { e^{i g} s^{N/2} phi(s x) } and recovers (s, g) when it does.
CharacterizationResult characterization_test(const Field& v, const GroundState& gs,
                                             double tol);

/// Sample the radial profile onto a Cartesian grid.
Field to_cartesian(const GroundState& gs, const CartesianGrid& grid);

} // namespace inls
