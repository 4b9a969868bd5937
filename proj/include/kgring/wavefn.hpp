#ifndef KGRING_WAVEFN_HPP
#define KGRING_WAVEFN_HPP

#include <complex>

#include "kgring/errors.hpp"
#include "kgring/spectrum.hpp"

namespace kgring {

/// Normalized radial factor
///   R(r) = C r^{(zeta + 2 - D)/2} e^{-eps r} L_n^zeta(2 eps r)
/// with the norm fixed by int_0^inf R^2 r^{D-1} dr = 1. The normalization
/// constant is assembled in log space to survive large zeta and n.
struct RadialState {
    int n = 0;
    int D = 3;
    double j = 0.0;
    double zeta = 0.0;
    double epsilon = 0.0;
    double log_norm = 0.0;

    static RadialState make(const PotentialSpec& spec, const EnergyLevel& level, int n, double j);
};

double radial(const RadialState& state, double r);

/// Normalized polar factor H(theta) = N sin^{m'}(theta) P_ntilde^{(m',m')}(cos theta)
/// with int_{-1}^{1} H^2 ds = 1 on s = cos(theta). The norm is Gamma-based
/// because m' is generically non-integer.
struct AngularState {
    int n_tilde = 0;
    double m_prime = 0.0;
    double log_norm = 0.0;

    static AngularState make(int n_tilde, double m_prime);
};

double angular(const AngularState& state, double theta);

/// Azimuthal factor e^{i m phi} / sqrt(2 pi).
std::complex<double> azimuthal(int m, double phi);

/// Full product wavefunction at (r, theta, phi).
std::complex<double> total(const RadialState& rad, const AngularState& ang, int m, double r,
                           double theta, double phi);

/// Sign changes of the radial factor strictly inside (0, r_max).
int radial_node_count(const RadialState& state, double r_max, int samples = 20000);

/// Sign changes of the polar factor strictly inside (0, pi).
int angular_node_count(const AngularState& state, int samples = 20000);

} // namespace kgring

#endif // KGRING_WAVEFN_HPP
