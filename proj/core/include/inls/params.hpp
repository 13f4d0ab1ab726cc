#pragma once

#include <stdexcept>

namespace inls {

/// Model parameters of the focusing inhomogeneous NLS
///   i u_t + Laplace(u) + |x|^{-b} |u|^{p-1} u = 0.
///
/// The nonlinearity power is tied to (N, b) through the mass-critical
/// relation p = 1 + (4 - 2b)/N and is never stored independently.
struct Params {
    int dim = 1;       ///< spatial dimension N >= 1
    double b = 0.5;    ///< inhomogeneity exponent, 0 < b < min(2, N)
    double p = 4.0;    ///< nonlinearity power (derived)

    /// true when p was overridden away from the mass-critical value
    bool critical = true;
};

/// Mass-critical parameters. Requires N >= 1 and 0 < b < min(2, N).
/// b = 0 is admitted only with allow_b_zero, to unlock the closed-form
/// classic ground state used as an oracle.
Params make_params(int dim, double b, bool allow_b_zero = false);

/// Parameters with an arbitrary energy-subcritical power p. Used by the
/// full virial identity, which holds away from the critical exponent.
Params make_params_general(int dim, double b, double p, bool allow_b_zero = false);

inline double critical_power(int dim, double b) {
    return 1.0 + (4.0 - 2.0 * b) / static_cast<double>(dim);
}

} // namespace inls
