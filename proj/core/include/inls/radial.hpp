#pragma once

#include <vector>

#include "inls/params.hpp"

namespace inls {

/// Radial profile phi(r) of a ground-state candidate, stored on a uniform
/// grid with cubic Hermite interpolation between nodes. Below the first
/// node the Frobenius-type series at the (mildly singular) origin is used;
/// beyond r_match the linearized decay C r^{-(N-1)/2} e^{-r}.
struct RadialProfile {
    int dim = 1;
    double b = 0.0;
    double p = 0.0;

    double r_first = 0.0; ///< first stored radius (> 0)
    double dr = 0.0;      ///< uniform node spacing
    std::vector<double> value;
    std::vector<double> deriv;

    double r_match = 0.0;    ///< start of the fitted exponential tail
    double tail_coeff = 0.0; ///< C in C r^{-(N-1)/2} e^{-r}

    // series phi = a + c1 r^{2-b} + c2 r^2 + d1 r^{4-2b} + d2 r^{4-b} + d3 r^4
    double a = 0.0;
    double c1 = 0.0, c2 = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;

    double r_max() const { return r_first + dr * (value.empty() ? 0 : value.size() - 1); }

    double eval(double r) const;
    double eval_deriv(double r) const;

    /// Fill the series coefficients from phi(0) = a0 and (dim, b, p).
    void set_series(double a0);
};

} // namespace inls
