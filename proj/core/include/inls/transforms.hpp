#pragma once

#include "inls/field.hpp"
#include "inls/ground_state.hpp"

namespace inls {

/// Parameters of the explicit blow-up family: blow-up time T, scale
/// lambda0 > 0 and global phase gamma0.
struct SFamilyParams {
    double T = 1.0;
    double lambda0 = 1.0;
    double gamma0 = 0.0;
};

/// Critical rescaling lambda^{N/2} u(lambda x). Preserves the L^2 norm
/// up to interpolation error; multiplies the energy by lambda^2.
Field scale(const Field& u, double lambda0);

/// Global phase u e^{i gamma0}.
Field phase(const Field& u, double gamma0);

/// Standing wave e^{i lambda0^2 t} e^{i gamma0} lambda0^{N/2} psi(lambda0 x),
/// sampled from the radial profile.
Field standing_wave(const SFamilyParams& sp, const GroundState& gs, double t,
                    const CartesianGrid& grid);

/// The closed-form blow-up solution
///   e^{i gamma0} e^{i lambda0^2/(T-t)} e^{-i|x|^2/4(T-t)}
///   (lambda0/(T-t))^{N/2} psi(lambda0 x / (T-t))
/// sampled at time t < T.
Field s_family(const SFamilyParams& sp, const GroundState& gs, double t,
               const CartesianGrid& grid);

/// Pseudo-conformal image of a snapshot v = u(s, .) with s = 1/(T-t):
///   e^{-i|x|^2/4(T-t)} (T-t)^{-N/2} v(x/(T-t)),
/// stamped with physical time t = T - 1/s. Mass is preserved up to
/// interpolation error.
Field pseudo_conformal(const Field& v, double s, double T, const CartesianGrid& grid);

/// Largest chirp phase increment between neighbouring nodes of the
/// factor e^{-i|x|^2/4 tau}; the chirp is resolvable while this is
/// comfortably below pi.
double chirp_phase_step(const CartesianGrid& grid, double tau);

} // namespace inls
