#include "kgring/nu_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kgring::nu {

namespace {

constexpr double kRelTol = 1e-12;

double problem_scale(const Problem& p) {
    return std::max({p.sigma.max_abs_coeff(), p.sigma_tilde.max_abs_coeff(),
                     p.tau_tilde.max_abs_coeff(), 1.0});
}

} // namespace

void Problem::validate() const {
    const double scale = problem_scale(*this);
    if (sigma.is_zero(kRelTol * scale)) {
        throw DegenerateProblem("sigma vanishes identically");
    }
    if (std::abs(tau_tilde[2]) > kRelTol * scale) {
        throw DegenerateProblem("tau_tilde must have degree <= 1");
    }
}

std::vector<PiCandidate> pi_candidates(const Problem& problem) {
    problem.validate();

    const Poly& sigma = problem.sigma;
    // h = (sigma' - tau_tilde)/2, P = h^2 - sigma_tilde, Q(s; k) = P + k sigma.
    const Poly h = 0.5 * (sigma.derivative() - problem.tau_tilde);
    const Poly P = h * h - problem.sigma_tilde;

    // The discriminant of Q in s is a quadratic in k:
    //   (P1 + k s1)^2 - 4 (P2 + k s2)(P0 + k s0) = a k^2 + b k + c.
    const double s0 = sigma[0], s1 = sigma[1], s2 = sigma[2];
    const double a = s1 * s1 - 4.0 * s2 * s0;
    const double b = 2.0 * P[1] * s1 - 4.0 * (P[2] * s0 + P[0] * s2);
    const double c = P[1] * P[1] - 4.0 * P[2] * P[0];

    const double kscale = std::max({std::abs(a), std::abs(b), std::abs(c), 1.0});
    std::vector<double> k_roots;
    if (std::abs(a) > kRelTol * kscale) {
        const double disc = b * b - 4.0 * a * c;
        const double disc_scale = std::max(b * b, std::abs(4.0 * a * c));
        if (disc < -kRelTol * std::max(disc_scale, 1.0)) {
            throw NoPerfectSquare("no real k zeroes the discriminant");
        }
        const double root = std::sqrt(std::max(disc, 0.0));
        // Stable quadratic roots: avoid cancellation in one of the two.
        const double q = -0.5 * (b + std::copysign(root, b));
        if (std::abs(q) > 0.0) {
            k_roots.push_back(q / a);
            k_roots.push_back(c / q);
        } else {
            k_roots.push_back(0.0);
        }
    } else if (std::abs(b) > kRelTol * kscale) {
        k_roots.push_back(-c / b);
    } else if (std::abs(c) <= kRelTol * kscale) {
        throw DegenerateProblem("discriminant vanishes for every k");
    } else {
        throw NoPerfectSquare("discriminant equation has no solution in k");
    }

    std::vector<PiCandidate> out;
    for (double k : k_roots) {
        // Q is now (up to roundoff) a perfect square (u s + v)^2.
        const Poly Q = P + k * sigma;
        const double qscale = std::max(Q.max_abs_coeff(), 1e-300);
        double u = 0.0, v = 0.0;
        if (std::abs(Q[2]) > kRelTol * qscale) {
            if (Q[2] < 0.0) {
                continue; // square root not real on this k root
            }
            u = std::sqrt(Q[2]);
            v = Q[1] / (2.0 * u);
        } else {
            if (Q[0] < -kRelTol * qscale) {
                continue;
            }
            v = std::sqrt(std::max(Q[0], 0.0));
        }
        const Poly w = Poly::linear(v, u);
        for (int sign : {+1, -1}) {
            PiCandidate cand;
            cand.k = k;
            cand.pi = (sign > 0) ? h + w : h - w;
            cand.branch_sign = sign;
            out.push_back(cand);
        }
    }
    if (out.empty()) {
        throw NoPerfectSquare("no k root yields a real linear factor");
    }

    std::sort(out.begin(), out.end(), [](const PiCandidate& x, const PiCandidate& y) {
        if (x.k != y.k) return x.k < y.k;
        return x.branch_sign > y.branch_sign;
    });
    std::vector<PiCandidate> dedup;
    for (const auto& cand : out) {
        bool dup = false;
        for (const auto& kept : dedup) {
            if (std::abs(cand.k - kept.k) <= kRelTol * std::max(std::abs(kept.k), 1.0) &&
                approx_equal(cand.pi, kept.pi)) {
                dup = true;
                break;
            }
        }
        if (!dup) dedup.push_back(cand);
    }
    return dedup;
}

Solution select_branch(const std::vector<PiCandidate>& candidates, const Problem& problem) {
    std::vector<Solution> admissible;
    for (const auto& cand : candidates) {
        const Poly tau = problem.tau_tilde + 2.0 * cand.pi;
        if (tau[1] < 0.0) {
            Solution sol;
            sol.k = cand.k;
            sol.pi = cand.pi;
            sol.tau = tau;
            sol.tau_slope = tau[1];
            sol.branch_sign = cand.branch_sign;
            admissible.push_back(sol);
        }
    }
    if (admissible.empty()) {
        throw NoAdmissibleBranch("no candidate gives tau with negative slope");
    }
    auto best = std::min_element(admissible.begin(), admissible.end(),
                                 [](const Solution& x, const Solution& y) {
                                     if (x.k != y.k) return x.k < y.k;
                                     return x.tau_slope < y.tau_slope;
                                 });
    Solution sol = *best;
    sol.tie_broken = admissible.size() > 1;
    return sol;
}

double lambda_n(const Solution& solution, const Problem& problem, int n) {
    if (n < 0) {
        throw NegativeIndex("polynomial index must be nonnegative");
    }
    const double sigma_dd = 2.0 * problem.sigma[2];
    return -static_cast<double>(n) * solution.tau_slope -
           0.5 * static_cast<double>(n) * (n - 1) * sigma_dd;
}

double lambda_from_k(const Solution& solution) { return solution.k + solution.pi[1]; }

double Weight::operator()(double x) const {
    switch (family) {
        case Family::PowerExponential:
            return std::pow(x, power) * std::exp(-decay * x);
        case Family::JacobiInterval:
            return std::pow(1.0 - x, left) * std::pow(1.0 + x, right);
    }
    return 0.0;
}

Weight rodrigues_weight(const Solution& solution, const Problem& problem) {
    const Poly& sigma = problem.sigma;
    const Poly& tau = solution.tau;
    const double scale = std::max(sigma.max_abs_coeff(), 1e-300);

    Weight w;
    if (std::abs(sigma[0]) <= kRelTol * scale && std::abs(sigma[2]) <= kRelTol * scale &&
        std::abs(sigma[1]) > kRelTol * scale) {
        // sigma = c x: rho = x^{tau0/c - 1} exp((tau1/c) x)
        w.family = Weight::Family::PowerExponential;
        w.power = tau[0] / sigma[1] - 1.0;
        w.decay = -tau[1] / sigma[1];
        return w;
    }
    if (std::abs(sigma[1]) <= kRelTol * scale && sigma[2] < 0.0 &&
        std::abs(sigma[0] + sigma[2]) <= kRelTol * scale) {
        // sigma = c (1 - s^2): rho = (1-s)^L (1+s)^R via partial fractions of
        // (tau - sigma')/sigma.
        const double c = sigma[0];
        const double A = tau[0] / c;
        const double B = (tau[1] + 2.0 * c) / c;
        w.family = Weight::Family::JacobiInterval;
        w.left = -0.5 * (A + B);
        w.right = 0.5 * (A - B);
        return w;
    }
    std::ostringstream msg;
    msg << "sigma outside the supported families (linear through origin or 1-s^2): "
        << "coefficients " << sigma[0] << ", " << sigma[1] << ", " << sigma[2];
    throw UnsupportedSigmaFamily(msg.str());
}

} // namespace kgring::nu
