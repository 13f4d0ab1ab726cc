#include <doctest.h>

#include <cmath>
#include <complex>

#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/params.hpp"
#include "inls/transforms.hpp"

#include "test_helpers.hpp"

using namespace inls;

namespace {

const CartesianGrid kGrid = make_grid(1, 1024, 20.0);

GroundState& classic_gs() {
    static GroundState gs = shoot(make_params(1, 0.0, true));
    return gs;
}

GroundState& cusp_gs() {
    static GroundState gs = shoot(make_params(1, 0.5));
    return gs;
}

} // namespace

TEST_CASE("critical rescaling matches the closed form on a Gaussian") {
    // lambda L must stay well below 2L: samples pulled from outside the
    // box continue periodically, so the wrapped tail must be negligible
    double A = 1.1, sigma = 1.5, lambda = 1.3;
    Field u = testutil::gaussian(kGrid, A, sigma);
    Field v = scale(u, lambda);
    Field expect = testutil::gaussian(kGrid, std::sqrt(lambda) * A, sigma / lambda);
    CHECK(testutil::sup_diff(v, expect) < 1e-10);
    CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-12));
    CHECK(grad_norm_sq(v) ==
          doctest::Approx(lambda * lambda * grad_norm_sq(u)).epsilon(1e-10));
}

TEST_CASE("rescaling guards") {
    Field u = testutil::gaussian(kGrid, 1.0, 1.0);
    CHECK_THROWS_AS(scale(u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(u, -2.0), std::invalid_argument);
    // lambda > 1 pulls samples from outside the box; a field that has not
    // decayed at the boundary must be refused
    Field broad = testutil::gaussian(kGrid, 1.0, 12.0);
    CHECK_THROWS_AS(scale(broad, 2.0), std::invalid_argument);
}

TEST_CASE("global phase") {
    Field u = testutil::gaussian(kGrid, 1.0, 1.0);
    Field v = phase(u, 0.9);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        CHECK(std::abs(v.values[i] - u.values[i] * std::polar(1.0, 0.9)) < 1e-15);
}

TEST_CASE("standing wave rotates with frequency lambda0^2") {
    SFamilyParams sp;
    sp.lambda0 = 1.3;
    sp.gamma0 = 0.4;
    Field a = standing_wave(sp, cusp_gs(), 0.0, kGrid);
    double t = 0.77;
    Field b = standing_wave(sp, cusp_gs(), t, kGrid);
    Complex rot = std::polar(1.0, sp.lambda0 * sp.lambda0 * t);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(b.values[i] - rot * a.values[i]));
    CHECK(worst < 1e-13);
    sp.lambda0 = -1.0;
    CHECK_THROWS_AS(standing_wave(sp, cusp_gs(), 0.0, kGrid), std::invalid_argument);
}

TEST_CASE("blow-up family: guards, mass constancy and gradient growth") {
    SFamilyParams sp;
    sp.T = 1.0;
    CHECK_THROWS_AS(s_family(sp, cusp_gs(), 1.0, kGrid), std::invalid_argument);
    CHECK_THROWS_AS(s_family(sp, cusp_gs(), 1.5, kGrid), std::invalid_argument);

    double m0 = cusp_gs().mass_sq;
    for (double t : {0.0, 0.3, 0.6})
        CHECK(mass(s_family(sp, cusp_gs(), t, kGrid)) == doctest::Approx(m0).epsilon(1e-3));

    // ||grad u(t)|| grows like 1/(T - t)
    double g0 = grad_norm_sq(s_family(sp, cusp_gs(), 0.0, kGrid));
    double g1 = grad_norm_sq(s_family(sp, cusp_gs(), 0.5, kGrid));
    CHECK(g1 > 3.0 * g0);
}

TEST_CASE("pseudo-conformal transform maps the standing wave onto the blow-up family") {
    // at s = 1 the pull-back points coincide with grid nodes, so the
    // identity is exact to roundoff even for the cusped profile
    SFamilyParams sp; // T = 1, lambda0 = 1, gamma0 = 0
    sp.T = 2.0;
    double s = 1.0, t = sp.T - 1.0 / s;
    Field v = standing_wave(SFamilyParams{sp.T, 1.0, 0.0}, cusp_gs(), s, kGrid);
    Field got = pseudo_conformal(v, s, sp.T, kGrid);
    Field expect = s_family(sp, cusp_gs(), t, kGrid);
    CHECK(testutil::sup_diff(got, expect) < 1e-12);
    CHECK(got.time == doctest::Approx(t));
}

TEST_CASE("pseudo-conformal transform at a scale-changing time, smooth profile") {
    SFamilyParams sp;
    sp.T = 2.0;
    double s = 2.0, t = sp.T - 1.0 / s; // tau = 1/2: genuine resampling
    Field v = standing_wave(SFamilyParams{sp.T, 1.0, 0.0}, classic_gs(), s, kGrid);
    Field got = pseudo_conformal(v, s, sp.T, kGrid);
    Field expect = s_family(sp, classic_gs(), t, kGrid);
    CHECK(testutil::sup_diff(got, expect) < 1e-8);
    CHECK(mass(got) == doctest::Approx(mass(v)).epsilon(1e-6));
}

TEST_CASE("pseudo-conformal transform guards") {
    Field v = testutil::gaussian(kGrid, 1.0, 1.0);
    CHECK_THROWS_AS(pseudo_conformal(v, 0.0, 1.0, kGrid), std::invalid_argument);
    // reach beyond the snapshot box with a non-decayed snapshot
    Field broad = testutil::gaussian(kGrid, 1.0, 15.0);
    CHECK_THROWS_AS(pseudo_conformal(broad, 2.0, 1.0, kGrid), std::invalid_argument);
}

TEST_CASE("chirp phase step") {
    CHECK(chirp_phase_step(kGrid, 1.0) ==
          doctest::Approx(kGrid.half_width * kGrid.spacing() / 2.0));
    CHECK(chirp_phase_step(kGrid, 0.1) > chirp_phase_step(kGrid, 1.0));
}
