#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "inls/ensembles.hpp"
#include "inls/fft.hpp"
#include "inls/field.hpp"
#include "inls/grid.hpp"
#include "inls/params.hpp"
#include "inls/weights.hpp"

#include "test_helpers.hpp"

using namespace inls;

TEST_CASE("critical power is tied to (N, b)") {
    CHECK(make_params(1, 0.5).p == doctest::Approx(4.0));
    CHECK(make_params(2, 1.0).p == doctest::Approx(2.0));
    CHECK(make_params(3, 1.0).p == doctest::Approx(1.0 + 2.0 / 3.0));
    CHECK(make_params(1, 0.0, true).p == doctest::Approx(5.0));
    CHECK(make_params(1, 0.5).critical);
}

TEST_CASE("inadmissible parameters are rejected") {
    CHECK_THROWS_AS(make_params(1, 0.0), std::invalid_argument);  // b = 0 needs opt-in
    CHECK_THROWS_AS(make_params(1, 1.0), std::invalid_argument);  // b >= min(2, N)
    CHECK_THROWS_AS(make_params(1, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_params(0, 0.5), std::invalid_argument);
}

TEST_CASE("general power validation") {
    Params p = make_params_general(1, 0.5, 3.0);
    CHECK(p.p == doctest::Approx(3.0));
    CHECK_FALSE(p.critical);
    CHECK(make_params_general(1, 0.5, 4.0).critical);
    CHECK_THROWS_AS(make_params_general(1, 0.5, 1.0), std::invalid_argument);
    // energy-supercritical in 3D: p >= 1 + (4 - 2b)/(N - 2)
    CHECK_THROWS_AS(make_params_general(3, 1.0, 3.0), std::invalid_argument);
    CHECK_NOTHROW(make_params_general(3, 1.0, 2.0));
}

TEST_CASE("grid construction and geometry") {
    CHECK_THROWS_AS(make_grid(1, 7, 10.0), std::invalid_argument);  // odd
    CHECK_THROWS_AS(make_grid(1, 2, 10.0), std::invalid_argument);  // too few
    CHECK_THROWS_AS(make_grid(4, 8, 10.0), std::invalid_argument);  // dim
    CHECK_THROWS_AS(make_grid(1, 8, 0.0), std::invalid_argument);   // width

    CartesianGrid g = make_grid(2, 8, 4.0);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.total() == 64);
    // cell-centered: symmetric nodes, none at the origin
    CHECK(g.coord(0) == doctest::Approx(-3.5));
    CHECK(g.coord(7) == doctest::Approx(3.5));
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(g.coord(i)) >= 0.5 - 1e-15);
    // wavenumbers: k = pi m / L with m in [-M/2, M/2)
    CHECK(g.wavenumber(0) == doctest::Approx(0.0));
    CHECK(g.wavenumber(1) == doctest::Approx(M_PI / 4.0));
    CHECK(g.wavenumber(7) == doctest::Approx(-M_PI / 4.0));
    CHECK(g.is_nyquist(4));
    // unravel round trip
    auto mi = g.unravel(8 * 3 + 5);
    CHECK(mi[0] == 3);
    CHECK(mi[1] == 5);
    double x = g.coord(3), y = g.coord(5);
    CHECK(g.radius_sq(8 * 3 + 5) == doctest::Approx(x * x + y * y));
}

TEST_CASE("unit sphere areas") {
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("cell average of |x|^{-b} in 1D against quadrature") {
    double b = 0.5;
    // interval away from the origin: plain smooth integrand
    double lo = 1.25, hi = 1.75;
    double oracle = testutil::simpson([&](double x) { return std::pow(std::abs(x), -b); },
                                      lo, hi, 2000) /
                    (hi - lo);
    CHECK(cell_average_1d(lo, hi, b) == doctest::Approx(oracle).epsilon(1e-12));
    // interval straddling the origin: (1/h) int_{-h/2}^{h/2} |x|^{-b}
    double h = 0.04;
    double exact = std::pow(0.5 * h, -b) / (1.0 - b);
    CHECK(cell_average_1d(-0.5 * h, 0.5 * h, b) == doctest::Approx(exact).epsilon(1e-13));
}

namespace {

// Independent oracle for int_{[-1,1]^N} |y|^{-b} dy via the heat-kernel
// representation |y|^{-b} = Gamma(b/2)^{-1} int_0^inf t^{b/2-1} e^{-t|y|^2} dt,
// which factorizes the cube integral into g(t)^N with
// g(t) = int_{-1}^1 e^{-t x^2} dx = sqrt(pi/t) erf(sqrt(t)).
double cube_integral_oracle(int dim, double b) {
    auto integrand = [&](double s) {
        double t = std::exp(s);
        double g = std::sqrt(M_PI / t) * std::erf(std::sqrt(t));
        return std::pow(t, 0.5 * b) * std::pow(g, dim);  // extra t from dt = t ds
    };
    // the integrand decays like e^{s b/2} to the left and e^{s(b-N)/2} to
    // the right, so small b needs a long left tail
    return testutil::simpson(integrand, -300.0, 120.0, 400000) / std::tgamma(0.5 * b);
}

} // namespace

TEST_CASE("unit cube integral of |y|^{-b}") {
    CHECK(unit_cube_inverse_power_integral(1, 0.5) ==
          doctest::Approx(2.0 / 0.5).epsilon(1e-12));
    CHECK(unit_cube_inverse_power_integral(1, 0.3) ==
          doctest::Approx(cube_integral_oracle(1, 0.3)).epsilon(1e-9));
    CHECK(unit_cube_inverse_power_integral(2, 1.0) ==
          doctest::Approx(cube_integral_oracle(2, 1.0)).epsilon(1e-9));
    CHECK(unit_cube_inverse_power_integral(3, 1.5) ==
          doctest::Approx(cube_integral_oracle(3, 1.5)).epsilon(1e-9));
}

TEST_CASE("potential weights: b = 0 degenerates to ones") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    for (double w : weighted_potential_nodes(g, 0.0))
        CHECK(w == doctest::Approx(1.0));
}

TEST_CASE("potential weights integrate |x|^{-b} exactly in 1D") {
    // in 1D every cell weight is the exact cell average, so the weighted
    // midpoint rule telescopes to the exact integral over the box
    CartesianGrid g = make_grid(1, 128, 5.0);
    double b = 0.5;
    auto w = weighted_potential_nodes(g, b);
    double total = 0.0;
    for (double wj : w)
        total += wj * g.spacing();
    double exact = 2.0 * std::pow(g.half_width, 1.0 - b) / (1.0 - b);
    CHECK(total == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("potential weights in 2D integrate |x|^{-b} over the box") {
    CartesianGrid g = make_grid(2, 128, 2.0);
    double b = 1.0;
    auto w = weighted_potential_nodes(g, b);
    double h = g.spacing();
    double total = 0.0;
    for (double wj : w)
        total += wj * h * h;
    double exact = std::pow(g.half_width, g.dim - b) * cube_integral_oracle(2, b);
    // away from the corrected window the weights are pointwise samples,
    // so the composite rule carries an O(h^2) defect
    CHECK(total == doctest::Approx(exact).epsilon(2e-4));
}

TEST_CASE("pointwise weights require a cell-centered grid") {
    CartesianGrid g = make_grid(1, 64, 5.0, /*cell_centered=*/false);
    CHECK_THROWS_AS(weighted_potential_nodes(g, 0.5, /*cell_average_correction=*/false),
                    std::invalid_argument);
}

TEST_CASE("spectral derivative and Laplacian are exact on plane waves") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    auto sp = spectral_for(g);
    double k = g.wavenumber(3);
    std::vector<Complex> u(g.total());
    for (int i = 0; i < g.points; ++i)
        u[i] = std::polar(1.0, k * g.coord(i));

    auto du = sp->derivative(u, 0);
    auto lap = sp->laplacian(u);
    for (int i = 0; i < g.points; ++i) {
        CHECK(std::abs(du[i] - Complex(0.0, k) * u[i]) < 1e-12);
        CHECK(std::abs(lap[i] + k * k * u[i]) < 1e-11);
    }
    // Parseval gradient: ||grad e^{ikx}||^2 = k^2 * 2L
    CHECK(sp->grad_norm_sq(u) == doctest::Approx(k * k * 2.0 * g.half_width).epsilon(1e-12));
}

TEST_CASE("derivative zeroes the Nyquist mode (skew-adjointness)") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    auto sp = spectral_for(g);
    double kny = g.wavenumber(g.points / 2);
    std::vector<Complex> u(g.total());
    for (int i = 0; i < g.points; ++i)
        u[i] = std::cos(kny * g.coord(i));
    auto du = sp->derivative(u, 0);
    for (const auto& v : du)
        CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("free flow is a pure spectral phase and is reversible") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    auto sp = spectral_for(g);
    double k = g.wavenumber(5);
    std::vector<Complex> u(g.total());
    for (int i = 0; i < g.points; ++i)
        u[i] = std::polar(1.0, k * g.coord(i));
    auto v = u;
    double dt = 0.37;
    sp->free_flow(v, dt);
    Complex expect_phase = std::polar(1.0, -k * k * dt);
    for (int i = 0; i < g.points; ++i)
        CHECK(std::abs(v[i] - expect_phase * u[i]) < 1e-12);
    sp->free_flow(v, -dt);
    for (int i = 0; i < g.points; ++i)
        CHECK(std::abs(v[i] - u[i]) < 1e-12);
}

TEST_CASE("tensor_eval reproduces samples at the nodes") {
    CartesianGrid g = make_grid(2, 32, 6.0);
    Field u = random_band_limited(g, 11, 10, 1.0);
    std::vector<double> xs(g.points);
    for (int i = 0; i < g.points; ++i)
        xs[i] = g.coord(i);
    auto vals = tensor_eval(u, {xs, xs});
    REQUIRE(vals.size() == u.values.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(std::abs(vals[i] - u.values[i]) < 1e-11);
}

TEST_CASE("tensor_eval is exact off-grid for band-limited data") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    double k = g.wavenumber(4);
    Field u = make_field(g);
    for (int i = 0; i < g.points; ++i)
        u.values[i] = std::polar(1.0, k * g.coord(i));
    std::vector<double> targets = {-3.91, -1.234, 0.0, 0.777, 4.999};
    auto vals = tensor_eval(u, {targets});
    for (std::size_t i = 0; i < targets.size(); ++i)
        CHECK(std::abs(vals[i] - std::polar(1.0, k * targets[i])) < 1e-12);
}

TEST_CASE("resample_scaled agrees with the closed form on plane waves") {
    CartesianGrid g = make_grid(1, 64, 5.0);
    double k = g.wavenumber(3);
    Field u = make_field(g);
    for (int i = 0; i < g.points; ++i)
        u.values[i] = std::polar(1.0, k * g.coord(i));

    Field same = resample_scaled(u, 1.0);
    CHECK(testutil::sup_diff(same, u) < 1e-12);

    double lambda = 0.37;
    Field v = resample_scaled(u, lambda);
    for (int i = 0; i < g.points; ++i)
        CHECK(std::abs(v.values[i] - std::polar(1.0, k * lambda * g.coord(i))) < 1e-11);
}
