#include "kgring/special_fn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kgring {

double laguerre(int n, double alpha, double x) {
    if (n < 0) {
        throw NegativeIndex("laguerre: n must be nonnegative");
    }
    if (alpha <= -1.0) {
        throw ParameterOutOfRange("laguerre: alpha must exceed -1");
    }
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double jacobi(int n, double a, double b, double x) {
    if (n < 0) {
        throw NegativeIndex("jacobi: n must be nonnegative");
    }
    if (a <= -1.0 || b <= -1.0) {
        throw ParameterOutOfRange("jacobi: parameters must exceed -1");
    }
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for (int k = 2; k <= n; ++k) {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        const double next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    return cur;
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw ParameterOutOfRange("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

namespace {

// Legendre nodes/weights on [-1, 1] by Newton iteration on the recurrence.
void legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Laguerre (alpha = 0) nodes with weights carrying the e^{x} factor, so the
// rule integrates plain f over [0, inf). Assembled in log space because the
// bare weights underflow long before the mapped ones do.
void laguerre_rule_mapped(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2]);
        }
        for (int it = 0; it < 200; ++it) {
            double p0 = 1.0, p1 = 1.0 - z;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0 - z) * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (p1 - p0) / z;
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-14 * std::max(z, 1.0)) break;
        }
        nodes[i] = z;
        double lnp1 = 0.0;
        {
            // L_{n+1}(z) for the weight x / [(n+1) L_{n+1}(x)]^2
            double p0 = 1.0, p1 = 1.0 - z;
            for (int k = 1; k <= n; ++k) {
                const double p2 = ((2.0 * k + 1.0 - z) * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            lnp1 = std::log(std::abs(p1) * (n + 1.0));
        }
        weights[i] = std::exp(std::log(z) - 2.0 * lnp1 + z);
    }
}

struct SimpsonState {
    const std::function<double(double)>* f = nullptr;
    long evals = 0;
    long max_evals = 0;

    double eval(double x) {
        ++evals;
        return (*f)(x);
    }
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.eval(lm);
    const double frm = st.eval(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth > 0 && std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= 48 || st.evals > st.max_evals) {
        throw NonConvergent("adaptive quadrature exhausted its budget");
    }
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n) {
    if (n < 2) {
        throw ParameterOutOfRange("gauss_legendre: need at least 2 nodes");
    }
    QuadratureRule rule;
    rule.kind_ = Kind::GaussLegendre;
    legendre_rule(n, rule.nodes_, rule.weights_);
    legendre_rule(std::max(2, n / 2), rule.coarse_nodes_, rule.coarse_weights_);
    return rule;
}

QuadratureRule QuadratureRule::gauss_laguerre_mapped(int n) {
    if (n < 2) {
        throw ParameterOutOfRange("gauss_laguerre_mapped: need at least 2 nodes");
    }
    QuadratureRule rule;
    rule.kind_ = Kind::GaussLaguerreMapped;
    laguerre_rule_mapped(n, rule.nodes_, rule.weights_);
    laguerre_rule_mapped(std::max(2, n / 2), rule.coarse_nodes_, rule.coarse_weights_);
    return rule;
}

QuadratureRule QuadratureRule::adaptive_simpson(double rel_tol, long max_evals) {
    if (!(rel_tol > 0.0) || max_evals < 16) {
        throw ParameterOutOfRange("adaptive_simpson: positive tolerance and budget required");
    }
    QuadratureRule rule;
    rule.kind_ = Kind::AdaptiveSimpson;
    rule.rel_tol_ = rel_tol;
    rule.max_evals_ = max_evals;
    return rule;
}

Integral integrate(const std::function<double(double)>& f, const QuadratureRule& rule, double lo,
                   double hi) {
    Integral result;
    switch (rule.kind()) {
        case QuadratureRule::Kind::GaussLegendre: {
            if (!std::isfinite(lo) || !std::isfinite(hi)) {
                throw ParameterOutOfRange("gauss_legendre: finite interval required");
            }
            const double mid = 0.5 * (lo + hi);
            const double rad = 0.5 * (hi - lo);
            double fine = 0.0, coarse = 0.0;
            for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
                fine += rule.weights()[i] * f(mid + rad * rule.nodes()[i]);
            }
            for (std::size_t i = 0; i < rule.coarse_nodes().size(); ++i) {
                coarse += rule.coarse_weights()[i] * f(mid + rad * rule.coarse_nodes()[i]);
            }
            result.value = fine * rad;
            result.error_estimate = std::abs(fine - coarse) * std::abs(rad);
            result.evaluations =
                static_cast<long>(rule.nodes().size() + rule.coarse_nodes().size());
            return result;
        }
        case QuadratureRule::Kind::GaussLaguerreMapped: {
            if (std::isfinite(hi)) {
                throw ParameterOutOfRange("gauss_laguerre_mapped: upper limit must be infinite");
            }
            double fine = 0.0, coarse = 0.0;
            for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
                fine += rule.weights()[i] * f(lo + rule.nodes()[i]);
            }
            for (std::size_t i = 0; i < rule.coarse_nodes().size(); ++i) {
                coarse += rule.coarse_weights()[i] * f(lo + rule.coarse_nodes()[i]);
            }
            result.value = fine;
            result.error_estimate = std::abs(fine - coarse);
            result.evaluations =
                static_cast<long>(rule.nodes().size() + rule.coarse_nodes().size());
            return result;
        }
        case QuadratureRule::Kind::AdaptiveSimpson: {
            if (!std::isfinite(lo) || !std::isfinite(hi)) {
                throw ParameterOutOfRange("adaptive_simpson: finite interval required");
            }
            SimpsonState st;
            st.f = &f;
            st.max_evals = rule.max_evals();
            // Uniform pilot split so the global scale is set by the whole
            // integrand, not by three samples that may all miss its support.
            constexpr int kPanels = 64;
            const double w = (hi - lo) / kPanels;
            std::vector<double> fs(2 * kPanels + 1);
            for (int i = 0; i <= 2 * kPanels; ++i) {
                fs[i] = st.eval(lo + 0.5 * w * i);
            }
            std::vector<double> panel(kPanels);
            double scale = 0.0;
            for (int p = 0; p < kPanels; ++p) {
                panel[p] = w / 6.0 * (fs[2 * p] + 4.0 * fs[2 * p + 1] + fs[2 * p + 2]);
                scale += std::abs(panel[p]);
            }
            const double tol = rule.rel_tol() * (scale + 1e-6);
            double total = 0.0;
            for (int p = 0; p < kPanels; ++p) {
                total += simpson_recurse(st, lo + p * w, lo + (p + 1) * w, fs[2 * p],
                                         fs[2 * p + 1], fs[2 * p + 2], panel[p],
                                         tol / kPanels, 0);
            }
            result.value = total;
            result.error_estimate = tol;
            result.evaluations = st.evals;
            return result;
        }
    }
    throw ParameterOutOfRange("integrate: unknown rule kind");
}

} // namespace kgring
