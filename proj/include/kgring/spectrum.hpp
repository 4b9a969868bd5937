#ifndef KGRING_SPECTRUM_HPP
#define KGRING_SPECTRUM_HPP

#include <optional>
#include <vector>

#include "kgring/errors.hpp"

namespace kgring {

/// Ring-shaped Kratzer-type interaction with equal scalar and vector parts:
///   V(r, theta) = -A/r + B/r^2 + C cot^2(theta)/r^2.
/// The Kratzer form ties A = 2 a0 r0 and B = a0 r0^2.
struct PotentialSpec {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double a0 = 0.0;
    double r0 = 0.0;
    double mu = 1.0;
    int D = 3;
    bool kratzer_form = false;

    static PotentialSpec kratzer(double a0, double r0, double C, double mu, int D);
    static PotentialSpec general(double A, double B, double C, double mu, int D);

    /// mu > 0, D >= 2, A > 0, B >= 0, C >= 0; throws ParameterOutOfRange /
    /// InvalidCoupling on violation.
    void validate() const;
};

struct QuantumNumbers {
    int n = 0;       // radial index
    int n_tilde = 0; // polar index
    int m = 0;       // azimuthal index, |m| used in the polar sector
};

/// Ring-coupling-shifted angular quantities at fixed coupling strength
/// alpha2_sq (which multiplies C inside the polar equation).
struct AngularMomenta {
    double m_prime = 0.0; // sqrt(m^2 + C alpha2_sq)
    double j = 0.0;       // solves j(j + D - 2) = lambda_polar - C alpha2_sq
    double j_prime = 0.0; // same with the ring shift folded into the orbital term
};

enum class EnergyKind { Relativistic, Nonrelativistic };
enum class SolveMethod { ClosedForm, RootSolve, Oracle };

struct EnergyLevel {
    double value = 0.0;
    EnergyKind kind = EnergyKind::Relativistic;
    SolveMethod method = SolveMethod::RootSolve;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Everything the radial sector needs once the angular sector is settled.
struct DerivedNumbers {
    double m_prime = 0.0;
    double j = 0.0;
    double j_prime = 0.0;
    double ell_prime = 0.0; // nonrelativistic analogue of j_prime
    double M = 0.0;         // D + 2 j
    double zeta = 0.0;      // sqrt((D + 2j - 2)^2 + 4 B alpha2^2)
    double alpha1_sq = 0.0; // mu - E
    double alpha2_sq = 0.0; // mu + E
    double epsilon = 0.0;   // sqrt(mu^2 - E^2)
    double beta_sq = 0.0;   // A alpha2^2
    double gamma_sq4 = 0.0; // 4 gamma^2 = zeta^2 - 1
};

/// Polar quantum map: from (n_tilde, m) and the coupling C alpha2_sq to the
/// effective orbital quantum numbers. Throws ComplexAngularMomentum when the
/// radicand goes negative and NegativeIndex for n_tilde < 0.
AngularMomenta angular_j(int n_tilde, int m, double C, double alpha2_sq, int D);

/// Inverse map: recovers n_tilde from j (round-trip partner of angular_j).
double angular_ntilde(double j, int m, double C, double alpha2_sq, int D);

/// Residual of the relativistic radial quantization condition at energy E for
/// fixed orbital j. Roots in (-mu, mu) are the bound-state energies.
double radial_eigen_equation(const PotentialSpec& spec, int n, double j, double E);

/// Residual of the fully coupled condition where the angular sector is
/// re-evaluated at the trial energy (j depends on E through alpha2^2 = mu + E).
double noncentral_eigen_equation(const PotentialSpec& spec, const QuantumNumbers& q, double E);

/// All roots of radial_eigen_equation in (-mu, mu), found by a uniform scan
/// and bisection. Throws NoBoundState when the scan brackets nothing.
std::vector<EnergyLevel> solve_radial_relativistic(const PotentialSpec& spec, int n, double j);

/// Same for the fully coupled equation at quantum numbers q.
std::vector<EnergyLevel> solve_noncentral_relativistic(const PotentialSpec& spec,
                                                       const QuantumNumbers& q);

/// Pure-Coulomb closed form. qe is the full attractive 1/r strength, so the
/// matching transcendental problem is the general one with A = qe, B = C = 0:
///   E = mu (1 - 2 qe^2 / (qe^2 + N^2)),  N = 2n + 2 ell + D - 1.
EnergyLevel coulomb_energy(double qe, const PotentialSpec& spec, int n, int ell);

/// Weak-coupling expansion of the same value: partial sums
///   order 0: mu;  order 1: mu - 2 mu qe^2/N^2;  order 2: + 2 mu qe^4/N^4.
EnergyLevel coulomb_series(double qe, const PotentialSpec& spec, int n, int ell, int order);

/// Principal combination 2n + 2 ell + D - 1 controlling interdimensional
/// degeneracy of the Coulomb levels.
int coulomb_principal(int D, int n, int ell);

/// Nonrelativistic ring-shaped Kratzer energy in closed form.
EnergyLevel nonrel_energy(const PotentialSpec& spec, const QuantumNumbers& q);

/// Relativistic level mapped onto its nonrelativistic counterpart:
/// shifted = -(mu - E_R) estimates E_NR in the weak-coupling regime.
struct NonrelLimit {
    double shifted_relativistic = 0.0;
    double nonrelativistic = 0.0;
    double gap = 0.0;
    double relative_gap = 0.0;
};

NonrelLimit nonrel_limit_map(const EnergyLevel& level, const PotentialSpec& spec,
                             const QuantumNumbers& q);

/// Derived spectral quantities at a converged energy.
DerivedNumbers derived_numbers(const PotentialSpec& spec, const QuantumNumbers& q, double E);

} // namespace kgring

#endif // KGRING_SPECTRUM_HPP
