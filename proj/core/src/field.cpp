#include "inls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace inls {

Field make_field(const CartesianGrid& grid, double time) {
    Field u;
    u.grid = grid;
    u.time = time;
    u.values.assign(grid.total(), Complex(0.0, 0.0));
    return u;
}

bool Field::finite() const {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

void require_finite(const Field& u) {
    if (u.values.size() != u.grid.total())
        throw std::runtime_error("field size does not match its grid");
    if (!u.finite())
        throw std::runtime_error("field contains non-finite samples");
}

namespace {

template <typename Accum>
void for_boundary(const Field& u, Accum&& accum) {
    const int M = u.grid.points;
    for (std::size_t idx = 0; idx < u.values.size(); ++idx) {
        auto mi = u.grid.unravel(idx);
        bool on_boundary = false;
        for (int a = 0; a < u.grid.dim; ++a)
            if (mi[a] == 0 || mi[a] == M - 1)
                on_boundary = true;
        if (on_boundary)
            accum(idx);
    }
}

} // namespace

double boundary_amplitude(const Field& u) {
    double peak = 0.0;
    for_boundary(u, [&](std::size_t idx) { peak = std::max(peak, std::abs(u.values[idx])); });
    return peak;
}

double boundary_mass_fraction(const Field& u) {
    double edge = 0.0;
    double total = 0.0;
    for (const auto& v : u.values)
        total += std::norm(v);
    for_boundary(u, [&](std::size_t idx) { edge += std::norm(u.values[idx]); });
    return total > 0.0 ? edge / total : 0.0;
}

} // namespace inls
