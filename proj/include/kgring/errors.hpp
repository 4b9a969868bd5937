#ifndef KGRING_ERRORS_HPP
#define KGRING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kgring {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- Nikiforov-Uvarov reduction ---

/// No real k makes the square-root argument a perfect square.
struct NoPerfectSquare : Error {
    using Error::Error;
};

/// sigma(s) identically zero (or the problem is otherwise ill-posed).
struct DegenerateProblem : Error {
    using Error::Error;
};

/// No candidate branch has tau' < 0.
struct NoAdmissibleBranch : Error {
    using Error::Error;
};

/// Weight extraction only supports sigma = c*r and sigma = c*(1-s^2).
struct UnsupportedSigmaFamily : Error {
    using Error::Error;
};

// --- special functions / quadrature ---

struct ParameterOutOfRange : Error {
    using Error::Error;
};

/// Adaptive quadrature failed to reach tolerance within the budget.
struct NonConvergent : Error {
    using Error::Error;
};

// --- spectrum ---

/// No sign change of the eigenvalue equation inside (-mu, mu).
struct NoBoundState : Error {
    using Error::Error;
};

/// An inner square-root argument went negative during the energy scan.
struct InvalidCoupling : Error {
    using Error::Error;
};

/// Radicand of the effective angular momentum is negative.
struct ComplexAngularMomentum : Error {
    using Error::Error;
};

/// Inverting the angular chain produced a negative polar index.
struct NegativeIndex : Error {
    using Error::Error;
};

/// Denominator of the nonrelativistic closed form is complex.
struct ComplexDenominator : Error {
    using Error::Error;
};

// --- oracle ---

/// Two successive grid refinements disagree beyond tolerance.
struct GridTooCoarse : Error {
    using Error::Error;
};

// --- cli ---

struct ConfigError : Error {
    using Error::Error;
};

} // namespace kgring

#endif // KGRING_ERRORS_HPP
