#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kgring/spectrum.hpp"
#include "kgring/special_fn.hpp"
#include "kgring/wavefn.hpp"

using namespace kgring;

namespace {

double radial_norm(const RadialState& state, int D) {
    const auto rule = QuadratureRule::adaptive_simpson(1e-10, 1 << 21);
    const double r_cut = (60.0 + 10.0 * state.zeta + 20.0 * state.n) / (2.0 * state.epsilon);
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double R = radial(state, r);
        return R * R * std::pow(r, D - 1);
    };
    return integrate(f, rule, 0.0, r_cut).value;
}

double angular_norm(const AngularState& state) {
    const auto rule = QuadratureRule::adaptive_simpson(1e-10, 1 << 21);
    auto f = [&](double theta) {
        const double H = angular(state, theta);
        return H * H * std::sin(theta);
    };
    return integrate(f, rule, 0.0, M_PI).value;
}

} // namespace

TEST_CASE("pure 1/r ground state in closed form") {
    // A = 1, D = 3, n = 0, j = 0: E = 3/5, eps = 4/5, zeta = 1, and the radial
    // factor collapses to C e^{-eps r} with C = 1.6^{3/2} / sqrt(2).
    const auto spec = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
    EnergyLevel level;
    level.value = 0.6;
    const auto state = RadialState::make(spec, level, 0, 0.0);

    CHECK(state.zeta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(state.epsilon == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(std::exp(state.log_norm) == doctest::Approx(1.4310835055998654).epsilon(1e-13));

    for (double r : {0.3, 1.0, 2.5}) {
        CHECK(radial(state, r) ==
              doctest::Approx(1.4310835055998654 * std::exp(-0.8 * r)).epsilon(1e-12));
    }
    CHECK(radial_norm(state, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(radial_node_count(state, 40.0 / state.epsilon) == 0);
}

TEST_CASE("radial factor carries the derived spectral data") {
    const auto spec = PotentialSpec::kratzer(0.2, 1.5, 0.1, 1.0, 4);
    const QuantumNumbers q{2, 1, 1};
    const auto level = solve_noncentral_relativistic(spec, q).front();
    const auto d = derived_numbers(spec, q, level.value);
    const auto state = RadialState::make(spec, level, q.n, d.j);

    CHECK(state.zeta == doctest::Approx(d.zeta).epsilon(1e-13));
    CHECK(state.epsilon == doctest::Approx(d.epsilon).epsilon(1e-13));
    CHECK(state.D == 4);

    // Pointwise agreement with the assembled closed form.
    for (double r : {0.5, 1.2, 3.0}) {
        const double rho = 2.0 * state.epsilon * r;
        const double expect = std::exp(state.log_norm) *
                              std::pow(r, 0.5 * (state.zeta + 2.0 - 4.0)) *
                              std::exp(-state.epsilon * r) * laguerre(2, state.zeta, rho);
        CHECK(radial(state, r) == doctest::Approx(expect).epsilon(1e-12));
    }

    CHECK(radial_norm(state, 4) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(radial_node_count(state, 60.0 / state.epsilon) == 2);

    CHECK_THROWS_AS(radial(state, 0.0), ParameterOutOfRange);
    CHECK_THROWS_AS(radial(state, -1.0), ParameterOutOfRange);
}

TEST_CASE("radial factory rejects bad inputs") {
    const auto spec = PotentialSpec::kratzer(0.1, 1.0, 0.0, 1.0, 3);
    EnergyLevel level;
    level.value = 0.99;
    CHECK_THROWS_AS(RadialState::make(spec, level, -1, 0.0), NegativeIndex);
    level.value = 1.5;
    CHECK_THROWS_AS(RadialState::make(spec, level, 0, 0.0), ParameterOutOfRange);
    level.value = -1.0;
    CHECK_THROWS_AS(RadialState::make(spec, level, 0, 0.0), ParameterOutOfRange);
}

TEST_CASE("polar factor: normalization and explicit values") {
    // m' = 0, n~ = 0 is the constant 1/sqrt(2) on s in [-1, 1].
    const auto flat = AngularState::make(0, 0.0);
    CHECK(angular(flat, 1.1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(angular_norm(flat) == doctest::Approx(1.0).epsilon(1e-9));

    for (double m_prime : {0.0, 1.0, std::sqrt(2.0), 2.7}) {
        for (int nt : {0, 1, 2, 3}) {
            const auto state = AngularState::make(nt, m_prime);
            CHECK(angular_norm(state) == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(angular_node_count(state) == nt);
        }
    }

    // At the equator sin(theta) = 1, so the envelope is just the norm factor.
    const auto state = AngularState::make(2, 1.5);
    CHECK(angular(state, M_PI / 2.0) ==
          doctest::Approx(std::exp(state.log_norm) * jacobi(2, 1.5, 1.5, 0.0)).epsilon(1e-12));

    // Poles: a positive endpoint exponent kills the factor continuously.
    // (sin(pi) is only zero up to rounding, so compare against a tiny bound.)
    CHECK(angular(state, 0.0) == 0.0);
    CHECK(std::abs(angular(state, M_PI)) < 1e-20);

    CHECK_THROWS_AS(AngularState::make(-1, 1.0), NegativeIndex);
    CHECK_THROWS_AS(AngularState::make(0, -0.3), ParameterOutOfRange);
}

TEST_CASE("azimuthal factor") {
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);
    const auto v = azimuthal(2, 0.3);
    CHECK(v.real() == doctest::Approx(norm * std::cos(0.6)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(norm * std::sin(0.6)).epsilon(1e-14));
    CHECK(std::abs(azimuthal(0, 1.7)) == doctest::Approx(norm).epsilon(1e-14));
    CHECK(azimuthal(0, 1.7).imag() == doctest::Approx(0.0));
    // Negative m winds the other way.
    CHECK(azimuthal(-2, 0.3).imag() == doctest::Approx(-v.imag()).epsilon(1e-14));
}

TEST_CASE("total wavefunction is the product of its factors") {
    const auto spec = PotentialSpec::kratzer(0.1, 1.0, 0.05, 1.0, 3);
    const QuantumNumbers q{1, 1, 1};
    const auto level = solve_noncentral_relativistic(spec, q).front();
    const auto d = derived_numbers(spec, q, level.value);
    const auto rad = RadialState::make(spec, level, q.n, d.j);
    const auto ang = AngularState::make(q.n_tilde, d.m_prime);

    const double r = 2.3, theta = 1.1, phi = 0.7;
    const std::complex<double> expect =
        radial(rad, r) * angular(ang, theta) * azimuthal(q.m, phi);
    const auto got = total(rad, ang, q.m, r, theta, phi);
    CHECK(got.real() == doctest::Approx(expect.real()).epsilon(1e-14));
    CHECK(got.imag() == doctest::Approx(expect.imag()).epsilon(1e-14));
}

TEST_CASE("node counts grow with the radial index") {
    const auto spec = PotentialSpec::general(1.0, 0.0, 0.0, 1.0, 3);
    for (int n : {0, 1, 2, 3}) {
        // Fix ell = 1 and solve for the level at each n.
        const auto level = solve_radial_relativistic(spec, n, 1.0).front();
        const auto state = RadialState::make(spec, level, n, 1.0);
        CHECK(radial_node_count(state, (60.0 + 20.0 * n) / state.epsilon) == n);
    }
}
