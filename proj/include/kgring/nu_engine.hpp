#ifndef KGRING_NU_ENGINE_HPP
#define KGRING_NU_ENGINE_HPP

#include <vector>

#include "kgring/errors.hpp"
#include "kgring/polynomial.hpp"

namespace kgring::nu {

/// Hypergeometric-type second-order ODE in standard form
///   y'' + (tau_tilde/sigma) y' + (sigma_tilde/sigma^2) y = 0
/// with deg(sigma) <= 2, deg(tau_tilde) <= 1, deg(sigma_tilde) <= 2.
struct Problem {
    Poly sigma;
    Poly sigma_tilde;
    Poly tau_tilde;

    /// Throws DegenerateProblem when degree bounds are violated or sigma is zero.
    void validate() const;
};

/// One admissible reduction candidate: the separation constant k together with
/// the linear factor pi(s) obtained from it and the sign of the square root taken.
struct PiCandidate {
    double k = 0.0;
    Poly pi;
    int branch_sign = +1;
};

/// Selected reduction. tau = tau_tilde + 2 pi must have negative slope.
struct Solution {
    double k = 0.0;
    Poly pi;
    Poly tau;
    double tau_slope = 0.0;
    int branch_sign = +1;
    bool tie_broken = false;
};

/// All values of k for which the discriminant of
///   pi = (sigma' - tau_tilde)/2 +- sqrt([(sigma' - tau_tilde)/2]^2 - sigma_tilde + k sigma)
/// vanishes identically, each paired with the resulting linear pi.
/// Candidates are sorted by k, then by branch sign; near-duplicates are merged.
/// Throws NoPerfectSquare when no real k renders the radicand a perfect square.
std::vector<PiCandidate> pi_candidates(const Problem& problem);

/// Picks the candidate whose tau has negative slope. When several qualify the
/// smallest k wins, then the most negative slope; the result records that a tie
/// intervened. Throws NoAdmissibleBranch when no candidate qualifies.
Solution select_branch(const std::vector<PiCandidate>& candidates, const Problem& problem);

/// Eigenvalue of the n-th polynomial solution: -n tau' - n(n-1)/2 sigma''.
/// Throws NegativeIndex for n < 0.
double lambda_n(const Solution& solution, const Problem& problem, int n);

/// The same quantity expressed through the separation constant: k + pi'.
double lambda_from_k(const Solution& solution);

/// Weight function rho solving (sigma rho)' = tau rho, for the two sigma
/// families that arise here. PowerExponential covers sigma = c1 * x with
/// rho = x^power exp(decay x); JacobiInterval covers sigma = c (1 - x^2) with
/// rho = (1-x)^left (1+x)^right.
struct Weight {
    enum class Family { PowerExponential, JacobiInterval };

    Family family = Family::PowerExponential;
    double power = 0.0;
    double decay = 0.0;
    double left = 0.0;
    double right = 0.0;

    double operator()(double x) const;
};

/// Throws UnsupportedSigmaFamily for sigma outside the two supported families.
Weight rodrigues_weight(const Solution& solution, const Problem& problem);

} // namespace kgring::nu

#endif // KGRING_NU_ENGINE_HPP
