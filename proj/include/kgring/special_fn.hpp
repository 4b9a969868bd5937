#ifndef KGRING_SPECIAL_FN_HPP
#define KGRING_SPECIAL_FN_HPP

#include <functional>
#include <vector>

#include "kgring/errors.hpp"

namespace kgring {

/// Generalized Laguerre polynomial L_n^alpha(x) by upward three-term recurrence.
/// Requires n >= 0 (NegativeIndex) and alpha > -1 (ParameterOutOfRange).
double laguerre(int n, double alpha, double x);

/// Jacobi polynomial P_n^(a,b)(x) with real a, b > -1, by upward recurrence.
double jacobi(int n, double a, double b, double x);

/// log Gamma(x) for x > 0; throws ParameterOutOfRange otherwise.
double log_gamma(double x);

struct Integral {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Quadrature rule: fixed Gauss nodes (with a coarser companion rule used for
/// the error estimate) or adaptive Simpson with a relative tolerance.
class QuadratureRule {
  public:
    enum class Kind { GaussLegendre, GaussLaguerreMapped, AdaptiveSimpson };

    static QuadratureRule gauss_legendre(int n);
    /// Nodes/weights of Gauss-Laguerre with the e^{-x} factor folded back in,
    /// so plain integrands f are integrated on [0, inf) as sum w_i e^{x_i} f(x_i).
    static QuadratureRule gauss_laguerre_mapped(int n);
    static QuadratureRule adaptive_simpson(double rel_tol = 1e-9, long max_evals = 1 << 20);

    Kind kind() const { return kind_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double rel_tol() const { return rel_tol_; }
    long max_evals() const { return max_evals_; }
    const std::vector<double>& coarse_nodes() const { return coarse_nodes_; }
    const std::vector<double>& coarse_weights() const { return coarse_weights_; }

  private:
    QuadratureRule() = default;

    Kind kind_ = Kind::AdaptiveSimpson;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> coarse_nodes_;
    std::vector<double> coarse_weights_;
    double rel_tol_ = 1e-9;
    long max_evals_ = 1 << 20;
};

/// Integrates f over [lo, hi]. hi may be infinite only for GaussLaguerreMapped
/// (with lo = 0); adaptive Simpson throws NonConvergent past its budget.
Integral integrate(const std::function<double(double)>& f, const QuadratureRule& rule,
                   double lo, double hi);

} // namespace kgring

#endif // KGRING_SPECIAL_FN_HPP
