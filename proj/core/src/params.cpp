#include "inls/params.hpp"

#include <algorithm>
#include <string>

namespace inls {

namespace {

void check_b_range(int dim, double b, bool allow_b_zero) {
    if (dim < 1)
        throw std::invalid_argument("dimension must be >= 1");
    double b_max = std::min(2.0, static_cast<double>(dim));
    if (b == 0.0 && allow_b_zero)
        return;
    if (b <= 0.0 || b >= b_max)
        throw std::invalid_argument("b = " + std::to_string(b) +
                                    " outside admissible range 0 < b < min{2, N} = " +
                                    std::to_string(b_max));
}

} // namespace

Params make_params(int dim, double b, bool allow_b_zero) {
    check_b_range(dim, b, allow_b_zero);
    Params params;
    params.dim = dim;
    params.b = b;
    params.p = critical_power(dim, b);
    params.critical = true;
    return params;
}

Params make_params_general(int dim, double b, double p, bool allow_b_zero) {
    check_b_range(dim, b, allow_b_zero);
    if (p <= 1.0)
        throw std::invalid_argument("nonlinearity power must satisfy p > 1");
    if (dim >= 3 && p >= 1.0 + (4.0 - 2.0 * b) / (dim - 2.0))
        throw std::invalid_argument("nonlinearity power is energy-supercritical");
    Params params;
    params.dim = dim;
    params.b = b;
    params.p = p;
    params.critical = (p == critical_power(dim, b));
    return params;
}

} // namespace inls
