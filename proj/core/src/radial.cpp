#include "inls/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

void RadialProfile::set_series(double a0) {
    a = a0;
    double ap = std::pow(a0, p);
    c1 = -ap / ((2.0 - b) * (dim - b));
    c2 = a0 / (2.0 * dim);
    d1 = -p * std::pow(a0, p - 1.0) * c1 / ((4.0 - 2.0 * b) * (dim + 2.0 - 2.0 * b));
    d2 = (c1 - p * std::pow(a0, p - 1.0) * c2) / ((4.0 - b) * (dim + 2.0 - b));
    d3 = c2 / (4.0 * (dim + 2.0));
}

namespace {

double series_value(const RadialProfile& f, double r) {
    double r2 = r * r;
    double rb = std::pow(r, 2.0 - f.b);
    return f.a + f.c1 * rb + f.c2 * r2 + f.d1 * rb * rb + f.d2 * rb * r2 + f.d3 * r2 * r2;
}

double series_deriv(const RadialProfile& f, double r) {
    double rb = std::pow(r, 1.0 - f.b);
    return f.c1 * (2.0 - f.b) * rb + 2.0 * f.c2 * r +
           f.d1 * (4.0 - 2.0 * f.b) * rb * rb * r + f.d2 * (4.0 - f.b) * rb * r * r +
           4.0 * f.d3 * r * r * r;
}

double tail_value(const RadialProfile& f, double r) {
    return f.tail_coeff * std::pow(r, -0.5 * (f.dim - 1)) * std::exp(-r);
}

double tail_deriv(const RadialProfile& f, double r) {
    return -tail_value(f, r) * (1.0 + 0.5 * (f.dim - 1) / r);
}

} // namespace

double RadialProfile::eval(double r) const {
    if (r < 0.0)
        throw std::invalid_argument("negative radius");
    if (r < r_first)
        return series_value(*this, r);
    if (r >= r_match && tail_coeff != 0.0)
        return tail_value(*this, r);
    double s = (r - r_first) / dr;
    std::size_t i = static_cast<std::size_t>(s);
    if (value.size() < 2 || i >= value.size() - 1) {
        if (tail_coeff != 0.0)
            return tail_value(*this, r);
        throw std::out_of_range("radius beyond stored profile");
    }
    double t = s - i;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * value[i] + h10 * dr * deriv[i] + h01 * value[i + 1] + h11 * dr * deriv[i + 1];
}

double RadialProfile::eval_deriv(double r) const {
    if (r < 0.0)
        throw std::invalid_argument("negative radius");
    if (r < r_first)
        return series_deriv(*this, r);
    if (r >= r_match && tail_coeff != 0.0)
        return tail_deriv(*this, r);
    double s = (r - r_first) / dr;
    std::size_t i = static_cast<std::size_t>(s);
    if (value.size() < 2 || i >= value.size() - 1) {
        if (tail_coeff != 0.0)
            return tail_deriv(*this, r);
        throw std::out_of_range("radius beyond stored profile");
    }
    double t = s - i;
    double g00 = 6 * t * (t - 1) / dr;
    double g10 = (1 - t) * (1 - 3 * t);
    double g01 = -g00;
    double g11 = t * (3 * t - 2);
    return g00 * value[i] + g10 * deriv[i] + g01 * value[i + 1] + g11 * deriv[i + 1];
}

} // namespace inls
